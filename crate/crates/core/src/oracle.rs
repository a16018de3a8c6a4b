//! Brute-force reference implementations used to cross-check the main
//! algorithms. They share no search logic with the modules they verify and
//! are exponential on purpose.
//!
//! # Random numbers
//!
//! [`SplitMix64`] is the only randomness source. With 64-bit wrapping
//! arithmetic, each call to `next_u64` does
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! return z ^ (z >> 31)
//! ```
//!
//! starting from `state = seed`, and `below(n)` is `next_u64() % n`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::localring::LocalRing;
use crate::magnus::{FreeWord, MagnusData};
use crate::matrix::Matrix;
use crate::symplectic::{GramForm, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    max_states: u128,
}

impl EnumerationBudget {
    pub const DEFAULT: u128 = 1 << 22;

    pub fn new(max_states: u128) -> Result<Self> {
        if max_states == 0 {
            return Err(Error::DomainError("budget must be positive".into()));
        }
        Ok(EnumerationBudget { max_states })
    }

    pub fn max_states(&self) -> u128 {
        self.max_states
    }

    fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_states {
            Err(Error::TooLarge { needed, budget: self.max_states })
        } else {
            Ok(())
        }
    }
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_states: Self::DEFAULT }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "below(0)");
        self.next_u64() % n
    }
}

/// Every skew-symmetric `n × n` matrix over `ring` with unit determinant,
/// each once. Odd `n` yields nothing.
pub fn all_skew_invertible(
    n: usize,
    ring: LocalRing,
    budget: &EnumerationBudget,
) -> Result<impl Iterator<Item = GramForm>> {
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let diag = ring.two_torsion();
    let total = (ring.modulus() as u128)
        .checked_pow(upper.len() as u32)
        .and_then(|x| x.checked_mul((diag.len() as u128).checked_pow(n as u32)?))
        .unwrap_or(u128::MAX);
    budget.check(total)?;
    let total = if n % 2 == 1 || n == 0 { 0 } else { total };

    Ok((0..total).filter_map(move |mut code| {
        let mut g = Matrix::zeros(ring, n, n);
        for &(i, j) in &upper {
            let x = (code % ring.modulus() as u128) as u64;
            code /= ring.modulus() as u128;
            g.set(i, j, x);
            g.set(j, i, ring.neg(x));
        }
        for i in 0..n {
            g.set(i, i, diag[(code % diag.len() as u128) as usize]);
            code /= diag.len() as u128;
        }
        if g.det_mod_p() == 0 {
            return None;
        }
        Some(GramForm::new(g).expect("skew by construction"))
    }))
}

/// Every totally isotropic subspace, the zero subspace included, found by
/// growing explicit vector sets one vector at a time and closing under
/// linear combinations. Each is returned with the basis it was grown from.
pub fn all_isotropic_subspaces(f: &GramForm, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    let ring = f.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.modulus()));
    }
    let p = ring.p();
    let n = f.dim();
    let size = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    budget.check(size)?;

    let all: Vec<Vec<u64>> = (0..size as u64)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % p;
                    code /= p;
                    d
                })
                .collect()
        })
        .collect();
    let isotropic_vector: Vec<bool> = all.iter().map(|v| f.pairing(v, v) == 0).collect();

    let zero = vec![vec![0u64; n]];
    let mut seen: HashSet<Vec<Vec<u64>>> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([(zero, Vec::<Vec<u64>>::new())]);
    let mut found = Vec::new();
    while let Some((set, basis)) = queue.pop_front() {
        let members: HashSet<&Vec<u64>> = set.iter().collect();
        for (idx, v) in all.iter().enumerate() {
            if !isotropic_vector[idx] || members.contains(v) {
                continue;
            }
            if set.iter().any(|w| f.pairing(v, w) != 0) {
                continue;
            }
            let mut grown: Vec<Vec<u64>> = Vec::with_capacity(set.len() * p as usize);
            for w in &set {
                for c in 0..p {
                    grown.push(w.iter().zip(v).map(|(&a, &b)| ring.add(a, ring.mul(c, b))).collect());
                }
            }
            grown.sort();
            grown.dedup();
            if seen.insert(grown.clone()) {
                budget.check(seen.len() as u128)?;
                let mut next = basis.clone();
                next.push(v.clone());
                queue.push_back((grown, next));
            }
        }
        found.push(Subspace::new(ring, n, basis)?);
    }
    Ok(found)
}

/// Largest dimension of a totally isotropic subspace, by [`all_isotropic_subspaces`].
pub fn exhaustive_isotropic_max(f: &GramForm, budget: &EnumerationBudget) -> Result<usize> {
    Ok(all_isotropic_subspaces(f, budget)?.iter().map(Subspace::dim).max().unwrap_or(0))
}

/// Magnus data of `w` built by multiplying one letter `x_g^{±1}` at a time.
pub fn expand_letterwise(w: &FreeWord, budget: &EnumerationBudget) -> Result<MagnusData> {
    let letters = w.letter_count();
    if letters > BigInt::from(budget.max_states()) {
        return Err(Error::TooLarge { needed: letters.try_into().unwrap_or(u128::MAX), budget: budget.max_states() });
    }
    let n = w.rank();
    let mut a = vec![BigInt::from(0); n];
    let mut c = vec![vec![BigInt::from(0); n]; n];
    for (g, e) in w.syllables() {
        let step = if e.is_negative() { -BigInt::one() } else { BigInt::one() };
        let mut remaining = e.abs();
        while remaining > BigInt::from(0) {
            // (1 + a + c)(1 + sX_g + [s = -1]X_g²)
            for i in 0..n {
                c[i][*g] += &a[i] * &step;
            }
            if step.is_negative() {
                c[*g][*g] += 1;
            }
            a[*g] += &step;
            remaining -= 1;
        }
    }
    Ok(MagnusData { linear: a, quadratic: c })
}

/// `(PᵀGP, P)` for a random invertible `P` drawn from a seeded [`SplitMix64`]
/// by rejection.
pub fn random_congruence_scramble(f: &GramForm, seed: u64) -> (GramForm, Matrix) {
    let ring = f.ring();
    let n = f.dim();
    let mut rng = SplitMix64::new(seed);
    loop {
        let mut p = Matrix::zeros(ring, n, n);
        for i in 0..n {
            for j in 0..n {
                p.set(i, j, rng.below(ring.modulus()));
            }
        }
        if p.is_invertible() {
            let g = f.congruent(&p).expect("congruence preserves skewness");
            return (g, p);
        }
    }
}
