//! Intersection-rank bounds for finitely generated subgroups `A`, `B` of a
//! Demushkin group `G`, and an audited numeric replay of the argument that
//! produces them.
//!
//! All arithmetic is exact on [`BigUint`].

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::localring::is_prime;

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `p²(dA + dB − 2)²(dA − 1)(dB − 1) + 1`.
pub fn bound(p: u64, d_a: u64, d_b: u64) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d_a == 0 || d_b == 0 {
        return Err(Error::DomainError("subgroup ranks must be at least 1".into()));
    }
    let s = big(d_a + d_b - 2);
    Ok(big(p) * big(p) * &s * &s * big(d_a - 1) * big(d_b - 1) + 1u32)
}

/// `⌊log_p(dA + dB − 2)⌋ + 1`, the least `n` with `dA + dB − 2 < p^n`.
pub fn chain_depth(p: u64, d_a: u64, d_b: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d_a + d_b < 3 {
        return Err(Error::DomainError(format!("dA + dB - 2 = {} is below 1", (d_a + d_b) as i128 - 2)));
    }
    let s = big(d_a + d_b - 2);
    let mut n = 0;
    let mut power = BigUint::one();
    while power <= s {
        power *= p;
        n += 1;
    }
    Ok(n)
}

/// `(d − 1)·index + 1`, the rank bound for an index-`index` subgroup of a free pro-p group of rank `d`.
pub fn schreier_bound(d: u64, index: u64) -> Result<BigUint> {
    if index == 0 {
        return Err(Error::DomainError("index must be positive".into()));
    }
    if d == 0 {
        return Ok(BigUint::one());
    }
    Ok(big(d - 1) * big(index) + 1u32)
}

/// `(dA − 1)(dB − 2) + 1`, the bound when `B` is open.
pub fn open_case_bound(d_a: u64, d_b: u64) -> Result<BigUint> {
    if d_a == 0 || d_b < 2 {
        return Err(Error::DomainError("requires dA >= 1 and dB >= 2".into()));
    }
    Ok(big(d_a - 1) * big(d_b - 2) + 1u32)
}

/// `(d1 − 1)(d2 − 1) + 1` for subgroups of a free pro-p group.
pub fn hanna_neumann_bound(d1: u64, d2: u64) -> Result<BigUint> {
    if d1 == 0 || d2 == 0 {
        return Err(Error::DomainError("ranks must be at least 1".into()));
    }
    Ok(big(d1 - 1) * big(d2 - 1) + 1u32)
}

fn hanna_neumann_big(d1: &BigUint, d2: &BigUint) -> BigUint {
    (d1 - 1u32) * (d2 - 1u32) + 1u32
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HowsonCase {
    /// `d(G) ≤ 2`: every closed subgroup has rank at most 2.
    Solvable,
    /// `A` or `B` has finite index.
    OpenSubgroup,
    /// `A` or `B` is procyclic.
    Procyclic,
    Generic,
}

impl HowsonCase {
    pub fn name(&self) -> &'static str {
        match self {
            HowsonCase::Solvable => "solvable",
            HowsonCase::OpenSubgroup => "open-subgroup",
            HowsonCase::Procyclic => "procyclic",
            HowsonCase::Generic => "generic",
        }
    }
}

pub fn classify(d_g: u64, d_a: u64, d_b: u64, a_open: bool, b_open: bool) -> HowsonCase {
    if d_g <= 2 {
        HowsonCase::Solvable
    } else if a_open || b_open {
        HowsonCase::OpenSubgroup
    } else if d_a <= 1 || d_b <= 1 {
        HowsonCase::Procyclic
    } else {
        HowsonCase::Generic
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// First line of a chain.
    Start,
    Eq,
    Le,
    Lt,
}

impl Relation {
    pub fn symbol(&self) -> &'static str {
        match self {
            Relation::Start => "",
            Relation::Eq => "=",
            Relation::Le => "<=",
            Relation::Lt => "<",
        }
    }

    fn holds(&self, prev: &BigUint, next: &BigUint) -> bool {
        match self {
            Relation::Start => true,
            Relation::Eq => prev == next,
            Relation::Le => prev <= next,
            Relation::Lt => prev < next,
        }
    }
}

/// One line of a chain: `previous <relation> value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStep {
    pub label: &'static str,
    pub expression: String,
    pub relation: Relation,
    pub value: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowsonReport {
    pub p: u64,
    pub d_g: u64,
    pub d_a: u64,
    pub d_b: u64,
    pub joint_index: BigUint,
    pub case: HowsonCase,
    pub n: u32,
    pub d_a0_bound: BigUint,
    pub d_b0_bound: BigUint,
    pub d_c_bound: BigUint,
    /// `(d(G) − 2)[G : U_n ∩ V_n] + 2`, the rank `C` would have if it were open.
    pub open_rank: BigUint,
    /// Rank bound for `A ∩ B` obtained from the free-group step.
    pub intersection_bound: BigUint,
    pub final_bound: BigUint,
    /// Bound on `d(C)`, ending strictly below `open_rank`.
    pub rank_chain: Vec<ChainStep>,
    /// Bound on `d(A ∩ B)`, ending at `final_bound`.
    pub intersection_chain: Vec<ChainStep>,
}

fn check_chain(chain: &[ChainStep]) -> Result<()> {
    for pair in chain.windows(2) {
        if !pair[1].relation.holds(&pair[0].value, &pair[1].value) {
            return Err(Error::ChainViolation(format!(
                "{} = {} {} {} = {} fails",
                pair[0].expression,
                pair[0].value,
                pair[1].relation.symbol(),
                pair[1].expression,
                pair[1].value
            )));
        }
    }
    Ok(())
}

fn step(label: &'static str, expression: &str, relation: Relation, value: BigUint) -> ChainStep {
    ChainStep { label, expression: expression.into(), relation, value }
}

/// Replays the generic-case argument with `[G : U_n ∩ V_n] = joint_index`,
/// where `U_n ⊇ A` and `V_n ⊇ B` have index `p^n` in `G`.
pub fn trace(p: u64, d_g: u64, d_a: u64, d_b: u64, joint_index: &BigUint) -> Result<HowsonReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d_g < 3 {
        return Err(Error::DomainError(format!("d(G) = {d_g} must be at least 3")));
    }
    if d_a < 2 || d_b < 1 {
        return Err(Error::DomainError("requires dA >= 2 and dB >= 1".into()));
    }
    let n = chain_depth(p, d_a, d_b)?;
    let pn = num_traits::pow(big(p), n as usize);
    let p2n = &pn * &pn;
    let j = joint_index;
    if j < &pn || j > &p2n {
        return Err(Error::DomainError(format!("joint index {j} outside [{pn}, {p2n}]")));
    }
    let mut probe = BigUint::one();
    while &probe < j {
        probe *= p;
    }
    if &probe != j {
        return Err(Error::DomainError(format!("joint index {j} is not a power of {p}")));
    }

    let (a1, b1) = (big(d_a - 1), big(d_b - 1));
    let sub_index = j / &pn;
    let d_a0_bound = &a1 * &sub_index + 1u32;
    let d_b0_bound = &b1 * &sub_index + 1u32;
    let d_c_bound = &d_a0_bound + &d_b0_bound;
    let open_rank = big(d_g - 2) * j + 2u32;

    let rank_chain = vec![
        step("sum of generator counts", "d(A0) + d(B0)", Relation::Start, d_c_bound.clone()),
        step(
            "index of A0 in A at most [U_n : U_n ∩ V_n]",
            "(dA-1)[U_n : U_n∩V_n] + (dB-1)[V_n : U_n∩V_n] + 2",
            Relation::Le,
            &a1 * &sub_index + &b1 * &sub_index + 2u32,
        ),
        step(
            "both chains have index p^n",
            "[G : U_n∩V_n](dA + dB - 2)/p^n + 2",
            Relation::Eq,
            j * big(d_a + d_b - 2) / &pn + 2u32,
        ),
        step("dA + dB - 2 < p^n", "[G : U_n∩V_n] + 2", Relation::Lt, j + 2u32),
        step("d(G) >= 3", "(d(G)-2)[G : U_n∩V_n] + 2", Relation::Le, open_rank.clone()),
    ];
    check_chain(&rank_chain)?;
    if d_c_bound >= open_rank {
        return Err(Error::ChainViolation("C would be open".into()));
    }

    let intersection_bound = hanna_neumann_big(&d_a0_bound, &d_b0_bound);
    let final_bound = bound(p, d_a, d_b)?;
    let intersection_chain = vec![
        step("free pro-p intersection bound", "(d(A0)-1)(d(B0)-1) + 1", Relation::Start, intersection_bound.clone()),
        step(
            "generator bound for A0 and B0",
            "(dA-1)[A : A0](dB-1)[B : B0] + 1",
            Relation::Le,
            &a1 * &sub_index * &b1 * &sub_index + 1u32,
        ),
        step(
            "index of A0 in A at most [G : V_n]",
            "(dA-1)[G : V_n](dB-1)[G : U_n] + 1",
            Relation::Le,
            &a1 * &pn * &b1 * &pn + 1u32,
        ),
        step("both chains have index p^n", "p^(2n)(dA-1)(dB-1) + 1", Relation::Eq, &p2n * &a1 * &b1 + 1u32),
        step("p^(n-1) <= dA + dB - 2", "p^2(dA+dB-2)^2(dA-1)(dB-1) + 1", Relation::Le, final_bound.clone()),
    ];
    check_chain(&intersection_chain)?;

    Ok(HowsonReport {
        p,
        d_g,
        d_a,
        d_b,
        joint_index: j.clone(),
        case: HowsonCase::Generic,
        n,
        d_a0_bound,
        d_b0_bound,
        d_c_bound,
        open_rank,
        intersection_bound,
        final_bound,
        rank_chain,
        intersection_chain,
    })
}
