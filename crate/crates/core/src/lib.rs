//! Exact algorithms for symplectic forms over `Z/p^k`, truncated Magnus
//! expansions of one-relator pro-p presentations, Demushkin relator
//! normalization, and the Howson intersection-rank bounds.

pub mod demushkin;
pub mod error;
pub mod howson;
pub mod localring;
pub mod magnus;
pub mod matrix;
pub mod oracle;
pub mod symplectic;

pub use error::{Error, Result};
pub use localring::{binom2, LocalRing};
pub use matrix::Matrix;
