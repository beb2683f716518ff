//! Exact coefficient fields.
//!
//! Two families are supported: the rationals (arbitrary precision, always
//! stored reduced with a positive denominator) and prime fields `F_p` with
//! `p < 2^32`, so that products of two residues fit in a `u64`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::linalg::{self, Matrix};

/// Runtime description of a coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoefficientField {
    Rationals,
    PrimeField(u64),
}

impl fmt::Display for CoefficientField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientField::Rationals => write!(f, "QQ"),
            CoefficientField::PrimeField(p) => write!(f, "F{p}"),
        }
    }
}

/// The default field, large enough that random linear combinations are
/// generic with overwhelming probability.
pub const DEFAULT_PRIME: u64 = 32003;

/// Arithmetic in an exact field. Field values carry whatever context the
/// element type needs (the modulus for `F_p`).
pub trait Field: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync;

    fn descriptor(&self) -> CoefficientField;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Image of the fraction `num/den`; `None` when `den` vanishes in the field.
    #[allow(clippy::wrong_self_convention)]
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Self::Elem>;
    /// Number of elements, `None` for infinite fields.
    fn size(&self) -> Option<u64>;
    fn format_elem(&self, a: &Self::Elem) -> String;
    /// A uniformly random element (bounded numerators for the rationals).
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn characteristic(&self) -> u64 {
        match self.descriptor() {
            CoefficientField::Rationals => 0,
            CoefficientField::PrimeField(p) => p,
        }
    }

    /// Scalar that turns `coeffs` into a primitive integral vector, for fields
    /// where coefficient growth matters. `None` means "leave as is".
    fn content_normalizer(&self, _coeffs: &[&Self::Elem]) -> Option<Self::Elem> {
        None
    }

    /// Rank of a matrix over the field.
    fn rank(&self, m: &Matrix<Self>) -> usize {
        linalg::gauss_rank(self, m)
    }
}

/// `F_p` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, AlgebraError> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    fn reduce_big(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_PRIME }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn descriptor(&self) -> CoefficientField {
        CoefficientField::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(self.pow(*a, self.p - 2))
        }
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<u64> {
        let d = self.inv(&self.reduce_big(den))?;
        Some(self.mul(&self.reduce_big(num), &d))
    }
    fn size(&self) -> Option<u64> {
        Some(self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        // symmetric representative keeps small negatives readable
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
}

/// The field of rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

/// Numerators of random rationals are drawn from `[-RANDOM_BOUND, RANDOM_BOUND]`.
const RANDOM_BOUND: i64 = 1000;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> CoefficientField {
        CoefficientField::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<BigRational> {
        if den.is_zero() {
            None
        } else {
            Some(BigRational::new(num.clone(), den.clone()))
        }
    }
    fn size(&self) -> Option<u64> {
        None
    }
    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.random_range(-RANDOM_BOUND..=RANDOM_BOUND))
    }

    fn content_normalizer(&self, coeffs: &[&BigRational]) -> Option<BigRational> {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in coeffs {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        if num_gcd.is_zero() {
            return None;
        }
        let lead_negative = coeffs.first().is_some_and(|c| c.is_negative());
        let mut scale = BigRational::new(den_lcm, num_gcd);
        if lead_negative {
            scale = -scale;
        }
        if scale.is_one() {
            None
        } else {
            Some(scale)
        }
    }

    fn rank(&self, m: &Matrix<Self>) -> usize {
        linalg::bareiss_rank(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prime_validation() {
        assert!(PrimeField::new(32003).is_ok());
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(32001).is_err());
        assert!(PrimeField::new((1 << 32) + 15).is_err());
    }

    #[test]
    fn symmetric_formatting() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.format_elem(&6), "-1");
        assert_eq!(f.format_elem(&3), "3");
        assert_eq!(f.format_elem(&4), "-3");
    }

    #[test]
    fn ratio_into_prime_field() {
        let f = PrimeField::new(7).unwrap();
        let half = f.from_ratio(&BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(f.mul(&half, &2), 1);
        assert!(f.from_ratio(&BigInt::from(1), &BigInt::from(14)).is_none());
    }

    #[test]
    fn rational_content() {
        let q = Rationals;
        let a = BigRational::new(BigInt::from(-2), BigInt::from(3));
        let b = BigRational::new(BigInt::from(4), BigInt::from(5));
        let s = q.content_normalizer(&[&a, &b]).unwrap();
        assert_eq!(q.mul(&a, &s), q.from_i64(5));
        assert_eq!(q.mul(&b, &s), q.from_i64(-6));
    }

    fn field_axioms<F: Field>(f: &F, a: F::Elem, b: F::Elem, c: F::Elem) {
        assert_eq!(
            f.mul(&f.add(&a, &b), &c),
            f.add(&f.mul(&a, &c), &f.mul(&b, &c))
        );
        assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        assert_eq!(f.sub(&a, &b), f.add(&a, &f.neg(&b)));
        if let Some(ai) = f.inv(&a) {
            assert!(f.is_one(&f.mul(&a, &ai)));
        } else {
            assert!(f.is_zero(&a));
        }
    }

    proptest! {
        #[test]
        fn prime_field_axioms(a in 0u64..32003, b in 0u64..32003, c in 0u64..32003) {
            field_axioms(&PrimeField::default(), a, b, c);
        }

        #[test]
        fn rational_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, c in -50i64..50) {
            let q = Rationals;
            let a = BigRational::new(an.into(), ad.into());
            let b = BigRational::new(bn.into(), bd.into());
            field_axioms(&q, a, b, q.from_i64(c));
        }
    }
}
