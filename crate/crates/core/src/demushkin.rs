//! Demushkin invariants, the open-subgroup rank formula, normalization of a
//! relator to the shape `w_1^q [w_1, z_1] ⋯ [w_t, z_t]` at the level of its
//! linear and quadratic Magnus data, and the explicit retraction map used
//! once the relator is in normal shape.
//!
//! Coordinates. Old generators are `x_1, …, x_n`; `H¹(G, F_p)` is written in
//! the dual basis `χ_i(x_j) = δ_ij`, where the relator pairing has Gram matrix
//! `C`. A normalization produces
//! * `dual_basis` Ψ: columns are a symplectic basis `(A_1, B_1, …)` of the
//!   functionals, so `Ψᵀ C Ψ` is the target block form, and
//! * `substitution` S = (Ψᵀ)⁻¹: columns are the new generators
//!   `w_1, z_1, …, w_t, z_t` written additively in the old ones (modulo
//!   commutators and `p^k`-th powers), so that `A_j(w_i) = δ_ij`.
//!
//! Equivalently `x = Ψ w`, and the relator rewritten in the new generators
//! has exponent sums `Ψᵀ a` and quadratic data `Ψᵀ C Ψ` mod `p`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::localring::{binom2, is_prime, LocalRing};
use crate::magnus::{analyze, demushkin_relator, FreeWord, QInvariant, RelatorAnalysis};
use crate::matrix::Matrix;
use crate::symplectic::{
    check_symplectic, complete_isotropic, lift_basis, standard_gram, symplectic_basis_field, GramForm, Subspace,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DemushkinInvariants {
    pub d: usize,
    pub p: u64,
    pub q: QInvariant,
    pub t: usize,
}

impl DemushkinInvariants {
    pub fn from_analysis(analysis: &RelatorAnalysis) -> Result<Self> {
        if !analysis.is_demushkin_candidate {
            return Err(Error::NotCandidate(candidate_failure(analysis)));
        }
        let d = analysis.magnus.rank();
        Ok(DemushkinInvariants { d, p: analysis.p, q: analysis.q, t: d / 2 })
    }
}

fn candidate_failure(a: &RelatorAnalysis) -> String {
    if a.magnus.rank() % 2 != 0 {
        "odd number of generators".into()
    } else if !a.linear_divisible {
        "exponent sums are not all divisible by p".into()
    } else {
        "relator pairing is degenerate".into()
    }
}

/// `d(U) = (d(G) - 2)[G : U] + 2` for an open subgroup `U` of a Demushkin group `G`.
pub fn subgroup_rank(d: u64, index: u64) -> Result<u128> {
    if d < 2 {
        return Err(Error::DomainError(format!("rank {d} is below 2")));
    }
    if index == 0 {
        return Err(Error::DomainError("index must be positive".into()));
    }
    Ok((d as u128 - 2) * index as u128 + 2)
}

/// True iff `d ≤ 2`, the solvable case.
pub fn solvable_guard(d: u64) -> bool {
    d <= 2
}

/// An isotropic subspace of `H¹(G, F_p)` that the new `w`-generators must be
/// killed by, optionally with the position of the distinguished functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub subspace: Subspace,
    pub distinguished: Option<usize>,
}

/// The normal shape `x_1^γ [x_1, y_1] x_2^δ [x_2, y_2] ⋯ [x_t, y_t]`. Only the
/// residues of `γ` and `δ` modulo `p^(v+1)` are determined; with `q = 0` both
/// are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalShape {
    pub q: QInvariant,
    pub t: usize,
    pub gamma_residue: BigInt,
    pub delta_residue: BigInt,
    /// `p^(v+1)`, or `None` when the residues are exact (`q = 0`).
    pub residue_modulus: Option<BigInt>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verification {
    /// `Ψᵀ C Ψ` equals the target block form over `F_p`.
    pub pairing_standard: bool,
    /// New exponent sums are `(q, 0, …, 0)` mod `p^(v+1)`; `None` when `q = 0`.
    pub linear_normalized: Option<bool>,
    /// Every constraint functional vanishes on every `w_i`; `None` without a constraint.
    pub constraint_respected: Option<bool>,
    pub lifted_basis_symplectic: bool,
}

impl Verification {
    pub fn all_hold(&self) -> bool {
        self.pairing_standard
            && self.linear_normalized != Some(false)
            && self.constraint_respected != Some(false)
            && self.lifted_basis_symplectic
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizationResult {
    pub p: u64,
    pub precision_k: u32,
    pub substitution: Matrix,
    pub dual_basis: Matrix,
    pub target: NormalShape,
    /// `Ψᵀ a` with Ψ's canonical representatives, exact.
    pub transformed_linear: Vec<BigInt>,
    /// `Ψᵀ C Ψ` over `F_p`.
    pub transformed_pairing: Matrix,
    /// The functional `χ` with `ω(η, χ) = η(s)` where `s^q ≡ r` modulo
    /// commutators; `None` when `q = 0`.
    pub distinguished: Option<Vec<u64>>,
    pub verification: Verification,
}

/// Block form expected after normalization: standard blocks, with
/// `binom(q, 2) mod p` in the top-left corner.
pub fn target_pairing(p: u64, q: &QInvariant, t: usize) -> Result<Matrix> {
    let field = LocalRing::field(p)?;
    let mut m = standard_gram(field, t);
    m.set(0, 0, field.reduce_big(&binom2(&q.value(p))));
    Ok(m)
}

fn pow_big(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

/// Rewrites the relator's generators so that its degree-two data matches
/// `w_1^q [w_1, z_1] ⋯ [w_t, z_t]`, optionally keeping a given isotropic
/// subspace of functionals inside the span of the `B`-vectors.
///
/// `precision_k` defaults to `v + 2` when `q = p^v` and to 2 when `q = 0`.
pub fn normalize_relator(
    r: &FreeWord,
    p: u64,
    precision_k: Option<u32>,
    constraint: Option<&Constraint>,
) -> Result<NormalizationResult> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let analysis = analyze(r, p)?;
    let inv = DemushkinInvariants::from_analysis(&analysis)?;
    let field = LocalRing::field(p)?;
    let n = inv.d;
    let t = inv.t;
    let cup = analysis.cup_form.clone().expect("candidate has a form");
    let linear = &analysis.magnus.linear;
    let v = inv.q.exponent();

    let precision_k = precision_k.unwrap_or(v.map_or(2, |v| v + 2));
    let work_ring = LocalRing::new(p, precision_k)?;

    // s with s^q ≡ r mod [F, F], and χ_σ solving C χ = s over F_p.
    let s: Option<Vec<BigInt>> = v.map(|v| {
        let q = pow_big(p, v);
        linear.iter().map(|a| a / &q).collect()
    });
    let distinguished = match &s {
        Some(s) => {
            let s_mod: Vec<u64> = s.iter().map(|x| field.reduce_big(x)).collect();
            Some(cup.gram().transpose().solve_row(&s_mod)?)
        }
        None => None,
    };

    if let Some(c) = constraint {
        if c.subspace.ambient_dim() != n || c.subspace.field() != field {
            return Err(Error::DimensionMismatch("constraint does not live in H^1(G, F_p)".into()));
        }
        if c.subspace.dim() > t {
            return Err(Error::ConstraintTooLarge { dim: c.subspace.dim(), t });
        }
    }

    let field_basis = match (constraint, &distinguished) {
        (Some(c), Some(chi)) => {
            let idx = c.distinguished.ok_or(Error::DistinguishedMissing)?;
            let supplied = c
                .subspace
                .basis()
                .get(idx)
                .ok_or_else(|| Error::DomainError(format!("distinguished index {idx} out of range")))?;
            if supplied != chi {
                return Err(Error::DistinguishedMismatch { supplied: supplied.clone(), expected: chi.clone() });
            }
            complete_isotropic(&cup, &c.subspace, idx)?
        }
        (Some(c), None) if c.subspace.dim() > 0 => complete_isotropic(&cup, &c.subspace, c.distinguished.unwrap_or(0))?,
        (_, Some(chi)) => {
            let span = Subspace::new(field, n, vec![chi.clone()])?;
            complete_isotropic(&cup, &span, 0)?
        }
        (_, None) => symplectic_basis_field(&cup)?,
    };

    // Lift over R = Z/q (q ≠ 0) or Z/p^precision (q = 0), with B_1 = χ_σ over R.
    let lift_ring = match v {
        Some(v) => LocalRing::new(p, v)?,
        None => work_ring,
    };
    let mut gram_r = Matrix::zeros(lift_ring, n, n);
    for i in 0..n {
        gram_r.set(i, i, lift_ring.reduce_big(&analysis.magnus.quadratic[i][i]));
        for j in i + 1..n {
            let c = lift_ring.reduce_big(&analysis.magnus.quadratic[i][j]);
            gram_r.set(i, j, c);
            gram_r.set(j, i, lift_ring.neg(c));
        }
    }
    let form_r = GramForm::new(gram_r)?;
    let b1 = match &s {
        Some(s) => {
            let s_mod: Vec<u64> = s.iter().map(|x| lift_ring.reduce_big(x)).collect();
            form_r.gram().transpose().solve_row(&s_mod)?
        }
        None => field_basis.b(0).to_vec(),
    };
    let lifted = lift_basis(&form_r, &b1, &field_basis)?;

    let dual_basis = Matrix::from_columns(work_ring, lifted.vectors())?;
    let substitution = dual_basis.transpose().inverse()?;

    let transformed_linear: Vec<BigInt> = (0..n)
        .map(|k| (0..n).map(|i| BigInt::from(dual_basis.get(i, k)) * &linear[i]).sum())
        .collect();
    let psi_p = dual_basis.reduce_mod_p();
    let transformed_pairing = psi_p.transpose().mul(cup.gram())?.mul(&psi_p)?;
    let target_form = target_pairing(p, &inv.q, t)?;

    let linear_normalized = v.map(|v| {
        let modulus = pow_big(p, v + 1);
        let q = pow_big(p, v);
        transformed_linear.iter().enumerate().all(|(k, a)| {
            let want = if k == 0 { q.mod_floor(&modulus) } else { BigInt::zero() };
            a.mod_floor(&modulus) == want
        })
    });
    let constraint_respected = constraint.map(|c| {
        let s_p = substitution.reduce_mod_p();
        c.subspace.basis().iter().all(|psi| (0..t).all(|i| field.reduce_i128(dot(psi, &s_p.column(2 * i))) == 0))
    });
    let verification = Verification {
        pairing_standard: transformed_pairing == target_form,
        linear_normalized,
        constraint_respected,
        lifted_basis_symplectic: check_symplectic(&lifted),
    };
    if !verification.all_hold() {
        return Err(Error::VerificationFailed(format!("{verification:?}")));
    }

    let target = match v {
        Some(v) => {
            let modulus = pow_big(p, v + 1);
            NormalShape {
                q: inv.q,
                t,
                gamma_residue: pow_big(p, v).mod_floor(&modulus),
                delta_residue: BigInt::zero(),
                residue_modulus: Some(modulus),
            }
        }
        None => NormalShape {
            q: inv.q,
            t,
            gamma_residue: BigInt::zero(),
            delta_residue: BigInt::zero(),
            residue_modulus: None,
        },
    };

    Ok(NormalizationResult {
        p,
        precision_k,
        substitution,
        dual_basis,
        target,
        transformed_linear,
        transformed_pairing,
        distinguished,
        verification,
    })
}

fn dot(a: &[u64], b: &[u64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Homomorphism `μ` from a group with relator
/// `x_1^γ [x_1, y_1] x_2^δ [x_2, y_2] ⋯` to a pro-p group `K` of rank
/// `target_rank`, sending every `x_i` to 1 and every `y_i` to the canonical
/// preimage `k_1^{v_1} ⋯ k_d^{v_d}` of `λ(y_i) = v` under `K → K/Φ(K) = F_p^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetractionWitness {
    pub t: usize,
    pub gamma: BigInt,
    pub delta: BigInt,
    pub p: u64,
    pub target_rank: usize,
    /// `λ` on `(x_1, y_1, …, x_t, y_t)`.
    pub lambda: Vec<Vec<u64>>,
    /// `μ` on `(x_1, y_1, …, x_t, y_t)` as words in the generators of `K`.
    pub mu: Vec<FreeWord>,
    /// Image of the relator under `μ`; always the empty word.
    pub relator_image: FreeWord,
}

pub fn retraction_witness(
    t: usize,
    gamma: &BigInt,
    delta: &BigInt,
    p: u64,
    target_rank: usize,
    lambda: &[Vec<u64>],
) -> Result<RetractionWitness> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if lambda.len() != 2 * t {
        return Err(Error::DimensionMismatch(format!("{} lambda values for {} generators", lambda.len(), 2 * t)));
    }
    if lambda.iter().any(|v| v.len() != target_rank) {
        return Err(Error::DimensionMismatch("lambda values must have length target_rank".into()));
    }
    let lambda: Vec<Vec<u64>> = lambda.iter().map(|v| v.iter().map(|x| x % p).collect()).collect();
    for i in 0..t {
        if lambda[2 * i].iter().any(|&x| x != 0) {
            return Err(Error::NoWitness(format!("λ(x_{}) = {:?} is nonzero", i + 1, lambda[2 * i])));
        }
    }

    let relator = demushkin_relator(t, gamma, delta)?;
    let mu: Vec<FreeWord> = lambda
        .iter()
        .enumerate()
        .map(|(g, value)| {
            if g % 2 == 0 {
                return Ok(FreeWord::empty(target_rank));
            }
            let syllables = value
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(j, &e)| (j, BigInt::from(e)))
                .collect();
            FreeWord::new(target_rank, syllables)
        })
        .collect::<Result<_>>()?;
    let relator_image = relator.substitute(&mu)?;
    if !relator_image.is_empty() {
        return Err(Error::VerificationFailed(format!("relator maps to {relator_image:?}")));
    }
    for (g, (word, value)) in mu.iter().zip(&lambda).enumerate() {
        let image: Vec<u64> = word
            .abelianize()
            .iter()
            .map(|e| e.mod_floor(&BigInt::from(p)).to_u64().expect("residue"))
            .collect();
        if &image != value {
            return Err(Error::VerificationFailed(format!("φ∘μ differs from λ on generator {g}")));
        }
    }
    Ok(RetractionWitness {
        t,
        gamma: gamma.clone(),
        delta: delta.clone(),
        p,
        target_rank,
        lambda,
        mu,
        relator_image,
    })
}
