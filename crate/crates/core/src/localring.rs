//! Arithmetic in the finite local rings `Z/p^k`.
//!
//! Elements are plain `u64` residues. Every value handed to or returned by a
//! [`LocalRing`] method is the least nonnegative representative of its class,
//! so equality of classes is equality of integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps every product of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// The ring `Z/p^k` with maximal ideal `(p)` and residue field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LocalRing {
    p: u64,
    k: u32,
    modulus: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl LocalRing {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidExponent(k));
        }
        let mut modulus = 1u64;
        for _ in 0..k {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m <= MAX_MODULUS)
                .ok_or(Error::ModulusTooLarge { p, k })?;
        }
        Ok(LocalRing { p, k, modulus })
    }

    /// The prime field `F_p`.
    pub fn field(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    pub fn residue_field(&self) -> LocalRing {
        LocalRing { p: self.p, k: 1, modulus: self.p }
    }

    pub fn reduce_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.modulus as i64) as u64
    }

    pub fn reduce_i128(&self, a: i128) -> u64 {
        a.rem_euclid(self.modulus as i128) as u64
    }

    pub fn reduce_big(&self, a: &BigInt) -> u64 {
        a.mod_floor(&BigInt::from(self.modulus))
            .to_u64()
            .expect("residue fits in u64")
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    /// `a` is a unit iff it lies outside the maximal ideal `(p)`.
    pub fn is_unit(&self, a: u64) -> bool {
        a % self.p != 0
    }

    /// Inverse by the extended Euclidean algorithm on `(a, p^k)`.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if !self.is_unit(a) {
            return Err(Error::NonUnit(a));
        }
        let (mut r0, mut r1) = (self.modulus as i128, (a % self.modulus) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let quot = r0 / r1;
            (r0, r1) = (r1, r0 - quot * r1);
            (s0, s1) = (s1, s0 - quot * s1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.reduce_i128(s0))
    }

    /// Largest `e <= k` with `p^e | a`; `None` stands for the valuation of zero.
    pub fn valuation(&self, a: u64) -> Option<u32> {
        let mut a = a % self.modulus;
        if a == 0 {
            return None;
        }
        let mut e = 0;
        while a % self.p == 0 {
            a /= self.p;
            e += 1;
        }
        Some(e)
    }

    /// Residue class mod `p` of a residue of this ring.
    pub fn to_residue_field(&self, a: u64) -> u64 {
        a % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Elements `d` with `2d = 0`: only zero for odd `p`, `{0, 2^(k-1)}` for `p = 2`.
    pub fn two_torsion(&self) -> Vec<u64> {
        if self.p == 2 {
            vec![0, self.modulus / 2]
        } else {
            vec![0]
        }
    }
}

/// `e(e-1)/2` over the integers; defined for negative `e` as well.
pub fn binom2(e: &BigInt) -> BigInt {
    let prod = e * (e - 1u32);
    prod / 2u32
}

pub fn binom2_i64(e: i64) -> i128 {
    let e = e as i128;
    e * (e - 1) / 2
}

/// `p`-adic valuation of a nonzero integer.
pub fn big_valuation(a: &BigInt, p: u64) -> Option<u32> {
    if a.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut a = a.abs();
    let mut e = 0;
    loop {
        let (quot, rem) = a.div_rem(&p);
        if !rem.is_zero() {
            return Some(e);
        }
        a = quot;
        e += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, k: u32) -> LocalRing {
        LocalRing::new(p, k).unwrap()
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert_eq!(LocalRing::new(6, 1), Err(Error::NotPrime(6)));
        assert_eq!(LocalRing::new(1, 1), Err(Error::NotPrime(1)));
        assert_eq!(LocalRing::new(3, 0), Err(Error::InvalidExponent(0)));
        assert!(matches!(LocalRing::new(2, 32), Err(Error::ModulusTooLarge { .. })));
        assert_eq!(ring(2, 31).modulus(), 1 << 31);
        assert_eq!(ring(3, 4).modulus(), 81);
    }

    #[test]
    fn unit_examples() {
        assert!(ring(2, 2).is_unit(3));
        assert!(!ring(2, 2).is_unit(0));
        assert!(!ring(3, 2).is_unit(0));
        assert!(!ring(3, 2).is_unit(6));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(ring(2, 2).inv(1), Ok(1));
        assert_eq!(ring(2, 2).inv(3), Ok(3));
        assert_eq!(ring(3, 2).inv(2), Ok(5));
        assert_eq!(ring(3, 2).inv(6), Err(Error::NonUnit(6)));
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(ring(2, 3).valuation(0), None);
        assert_eq!(ring(2, 3).valuation(4), Some(2));
        assert_eq!(ring(3, 2).valuation(6), Some(1));
        assert_eq!(ring(3, 2).valuation(1), Some(0));
    }

    #[test]
    fn binom2_examples() {
        assert_eq!(binom2(&BigInt::from(0)), BigInt::from(0));
        assert_eq!(binom2(&BigInt::from(4)), BigInt::from(6));
        assert_eq!(binom2(&BigInt::from(-2)), BigInt::from(3));
        assert_eq!(binom2(&BigInt::from(-1)), BigInt::from(1));
        assert_eq!(binom2_i64(-2), 3);
    }

    #[test]
    fn inverse_exhaustive_small_moduli() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)] {
            let r = ring(p, k);
            assert!(r.modulus() <= 81);
            for a in 0..r.modulus() {
                match r.inv(a) {
                    Ok(b) => assert_eq!(r.mul(a, b), 1, "a={a} mod {}", r.modulus()),
                    Err(_) => assert!(!r.is_unit(a)),
                }
            }
        }
    }

    #[test]
    fn reduction_is_a_ring_homomorphism() {
        for (p, k) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (3, 3), (5, 2)] {
            let r = ring(p, k);
            let f = r.residue_field();
            for a in 0..r.modulus() {
                for b in 0..r.modulus() {
                    assert_eq!(f.to_residue_field(r.add(a, b)), f.add(a % p, b % p));
                    assert_eq!(f.to_residue_field(r.mul(a, b)), f.mul(a % p, b % p));
                }
            }
        }
    }

    #[test]
    fn big_valuation_matches_trial_division() {
        assert_eq!(big_valuation(&BigInt::from(0), 3), None);
        assert_eq!(big_valuation(&BigInt::from(-18), 3), Some(2));
        assert_eq!(big_valuation(&BigInt::from(7), 2), Some(0));
    }
}
