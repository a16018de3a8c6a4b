//! Free-group words and their Magnus expansion truncated above degree two.
//!
//! A word maps to `1 + Σ a_i X_i + Σ c_ij X_i X_j` in noncommuting variables
//! via `x_i ↦ 1 + X_i`. The linear part is the exponent-sum vector; the
//! quadratic part carries the commutator and power data of the word modulo
//! the third term of its lower central series. All coefficients are exact
//! integers.
//!
//! Generators are indexed from zero.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::localring::{big_valuation, binom2, is_prime, LocalRing};
use crate::matrix::Matrix;
use crate::symplectic::{is_nondegenerate, GramForm};

/// A freely reduced word, stored as syllables `x_i^e` with `e ≠ 0` and no two
/// adjacent syllables on the same generator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    n: usize,
    syllables: Vec<(usize, BigInt)>,
}

impl FreeWord {
    pub fn new(n: usize, syllables: Vec<(usize, BigInt)>) -> Result<Self> {
        if let Some((g, _)) = syllables.iter().find(|(g, _)| *g >= n) {
            return Err(Error::InvalidWord(format!("generator index {g} out of range for rank {n}")));
        }
        let mut w = FreeWord { n, syllables: Vec::with_capacity(syllables.len()) };
        for (g, e) in syllables {
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn from_i64(n: usize, syllables: &[(usize, i64)]) -> Result<Self> {
        Self::new(n, syllables.iter().map(|&(g, e)| (g, BigInt::from(e))).collect())
    }

    pub fn empty(n: usize) -> Self {
        FreeWord { n, syllables: Vec::new() }
    }

    pub fn generator(n: usize, g: usize) -> Result<Self> {
        Self::new(n, vec![(g, BigInt::one())])
    }

    pub fn power_of_generator(n: usize, g: usize, e: BigInt) -> Result<Self> {
        Self::new(n, vec![(g, e)])
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn syllables(&self) -> &[(usize, BigInt)] {
        &self.syllables
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Total number of letters `Σ |e|`.
    pub fn letter_count(&self) -> BigInt {
        self.syllables.iter().map(|(_, e)| e.abs()).sum()
    }

    fn push(&mut self, g: usize, e: BigInt) {
        if e.is_zero() {
            return;
        }
        match self.syllables.last_mut() {
            Some((last, exp)) if *last == g => {
                *exp += e;
                if exp.is_zero() {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord { n: self.n, syllables: self.syllables.iter().rev().map(|(g, e)| (*g, -e)).collect() }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.n, other.n, "words over different free groups");
        let mut out = self.clone();
        for (g, e) in &other.syllables {
            out.push(*g, e.clone());
        }
        out
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> FreeWord {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    /// `self^e`. Non-syllable words are repeated `|e|` times, so `|e|` must fit in `usize`.
    pub fn pow(&self, e: &BigInt) -> Result<FreeWord> {
        if let [(g, base)] = self.syllables.as_slice() {
            return FreeWord::new(self.n, vec![(*g, base * e)]);
        }
        let base = if e.is_negative() { self.inverse() } else { self.clone() };
        let times = e.abs().to_usize().ok_or_else(|| Error::InvalidWord(format!("exponent {e} too large")))?;
        let mut out = FreeWord::empty(self.n);
        for _ in 0..times {
            out = out.concat(&base);
        }
        Ok(out)
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[FreeWord]) -> Result<FreeWord> {
        if images.len() != self.n {
            return Err(Error::InvalidWord(format!("{} images for rank {}", images.len(), self.n)));
        }
        let target = images.first().map_or(0, FreeWord::rank);
        if images.iter().any(|w| w.rank() != target) {
            return Err(Error::InvalidWord("images live in different free groups".into()));
        }
        let mut out = FreeWord::empty(target);
        for (g, e) in &self.syllables {
            out = out.concat(&images[*g].pow(e)?);
        }
        Ok(out)
    }

    /// Exponent-sum vector.
    pub fn abelianize(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.n];
        for (g, e) in &self.syllables {
            v[*g] += e;
        }
        v
    }
}

/// Coefficients of a degree-two truncated Magnus expansion with constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MagnusData {
    pub linear: Vec<BigInt>,
    pub quadratic: Vec<Vec<BigInt>>,
}

impl MagnusData {
    pub fn identity(n: usize) -> Self {
        MagnusData { linear: vec![BigInt::zero(); n], quadratic: vec![vec![BigInt::zero(); n]; n] }
    }

    pub fn rank(&self) -> usize {
        self.linear.len()
    }

    /// `(1 + X_g)^e = 1 + e X_g + binom(e, 2) X_g² + …`
    pub fn syllable(n: usize, g: usize, e: &BigInt) -> Self {
        let mut m = Self::identity(n);
        m.linear[g] = e.clone();
        m.quadratic[g][g] = binom2(e);
        m
    }

    /// Truncated product.
    pub fn mul(&self, other: &MagnusData) -> MagnusData {
        let n = self.rank();
        assert_eq!(n, other.rank(), "expansions of different ranks");
        let mut out = self.clone();
        for i in 0..n {
            out.linear[i] += &other.linear[i];
            for j in 0..n {
                out.quadratic[i][j] += &other.quadratic[i][j];
                if !self.linear[i].is_zero() && !other.linear[j].is_zero() {
                    out.quadratic[i][j] += &self.linear[i] * &other.linear[j];
                }
            }
        }
        out
    }

    /// Truncated inverse series `1 - a + (a aᵀ - c)`.
    pub fn inverse(&self) -> MagnusData {
        let n = self.rank();
        let mut out = Self::identity(n);
        for i in 0..n {
            out.linear[i] = -&self.linear[i];
            for j in 0..n {
                out.quadratic[i][j] = &self.linear[i] * &self.linear[j] - &self.quadratic[i][j];
            }
        }
        out
    }

    /// Group-like identities: `c_ij + c_ji = a_i a_j` for `i ≠ j` and
    /// `c_ii = binom(a_i, 2)`.
    pub fn shuffle_identities_hold(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| {
            self.quadratic[i][i] == binom2(&self.linear[i])
                && (i + 1..n)
                    .all(|j| &self.quadratic[i][j] + &self.quadratic[j][i] == &self.linear[i] * &self.linear[j])
        })
    }
}

pub fn expand(w: &FreeWord) -> MagnusData {
    w.syllables()
        .iter()
        .fold(MagnusData::identity(w.rank()), |acc, (g, e)| acc.mul(&MagnusData::syllable(w.rank(), *g, e)))
}

/// The invariant `q`: zero when the abelianization is torsion-free, otherwise
/// `p^v` with `v` the least `p`-adic valuation among the exponent sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QInvariant {
    TorsionFree,
    PrimePower { exponent: u32 },
}

impl QInvariant {
    pub fn value(&self, p: u64) -> BigInt {
        match self {
            QInvariant::TorsionFree => BigInt::zero(),
            QInvariant::PrimePower { exponent } => num_traits::pow(BigInt::from(p), *exponent as usize),
        }
    }

    pub fn exponent(&self) -> Option<u32> {
        match self {
            QInvariant::TorsionFree => None,
            QInvariant::PrimePower { exponent } => Some(*exponent),
        }
    }
}

/// What a single relator says about `H¹` of the one-relator pro-p group it defines.
///
/// `pairing` is the relator pairing over `F_p`: `pairing[i][j] = c_ij mod p`
/// for `i < j`, its negative below the diagonal, and `c_ii mod p` on the
/// diagonal. It is a stand-in for the cup product on `H¹(G, F_p)` up to an
/// unverified global sign/transpose convention; it is checked only through the
/// shuffle identities, `η ∪ η = binom(q, 2) η(σ)` on the diagonal, and the
/// standard form it takes on surface relators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorAnalysis {
    pub magnus: MagnusData,
    pub p: u64,
    pub q: QInvariant,
    /// Every exponent sum is divisible by `p`, i.e. `r ∈ F^p[F, F]`.
    pub linear_divisible: bool,
    pub pairing: Matrix,
    /// `pairing` as a form, when it is skew-symmetric and of even size.
    pub cup_form: Option<GramForm>,
    pub nondegenerate: bool,
    pub is_demushkin_candidate: bool,
}

pub fn analyze(r: &FreeWord, p: u64) -> Result<RelatorAnalysis> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r.is_empty() {
        return Err(Error::EmptyRelator);
    }
    let field = LocalRing::field(p)?;
    let magnus = expand(r);
    let n = r.rank();

    let q = magnus
        .linear
        .iter()
        .filter_map(|a| big_valuation(a, p))
        .min()
        .map_or(QInvariant::TorsionFree, |exponent| QInvariant::PrimePower { exponent });
    let linear_divisible = !matches!(q, QInvariant::PrimePower { exponent: 0 });

    let mut pairing = Matrix::zeros(field, n, n);
    for i in 0..n {
        pairing.set(i, i, field.reduce_big(&magnus.quadratic[i][i]));
        for j in i + 1..n {
            let c = field.reduce_big(&magnus.quadratic[i][j]);
            pairing.set(i, j, c);
            pairing.set(j, i, field.neg(c));
        }
    }
    let cup_form = GramForm::new(pairing.clone()).ok();
    let nondegenerate = cup_form.as_ref().is_some_and(is_nondegenerate);
    let is_demushkin_candidate = n % 2 == 0 && nondegenerate && linear_divisible;
    Ok(RelatorAnalysis { magnus, p, q, linear_divisible, pairing, cup_form, nondegenerate, is_demushkin_candidate })
}

/// `x_1^γ [x_1, y_1] x_2^δ [x_2, y_2] [x_3, y_3] ⋯ [x_t, y_t]` on the generators
/// `(x_1, y_1, …, x_t, y_t)`; `δ` is ignored when `t = 1`.
pub fn demushkin_relator(t: usize, gamma: &BigInt, delta: &BigInt) -> Result<FreeWord> {
    if t == 0 {
        return Err(Error::DomainError("t must be at least 1".into()));
    }
    let n = 2 * t;
    let mut w = FreeWord::empty(n);
    for i in 0..t {
        let x = FreeWord::generator(n, 2 * i)?;
        let y = FreeWord::generator(n, 2 * i + 1)?;
        let exp = match i {
            0 => gamma.clone(),
            1 => delta.clone(),
            _ => BigInt::zero(),
        };
        w = w.concat(&FreeWord::power_of_generator(n, 2 * i, exp)?).concat(&FreeWord::commutator(&x, &y));
    }
    Ok(w)
}
