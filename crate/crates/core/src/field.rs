//! Exact coefficient fields: the rationals and prime fields `F_p`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Prime used for generic-coefficient computations unless configured otherwise.
pub const DEFAULT_PRIME: u32 = 32003;

/// A coefficient field. Prime fields are limited to `p < 2^31` so that products
/// of two reduced residues fit in a `u64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u32),
}

/// A field element. The variant always matches the owning ring's [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u32),
    Q(BigRational),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p >= (1 << 31) {
            return Err(Error::Invalid(format!(
                "characteristic {p} too large (must be < 2^31)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::zero()),
            Field::Prime(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::one()),
            Field::Prime(_) => Scalar::Fp(1),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Fp(v.rem_euclid(*p as i64) as u32),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let r = ((v % &m) + &m) % &m;
                Scalar::Fp(r.to_u32().expect("residue fits"))
            }
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, v: &BigRational) -> Result<Scalar> {
        match self {
            Field::Rationals => Ok(Scalar::Q(v.clone())),
            Field::Prime(_) => {
                let n = self.from_bigint(v.numer());
                let d = self.from_bigint(v.denom());
                if self.is_zero(&d) {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.div(&n, &d))
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 0,
            Scalar::Q(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Fp(v) => *v == 1,
            Scalar::Q(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x + y),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Scalar::Q(x)) => Scalar::Q(-x),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Q(x), Scalar::Q(y)) => Scalar::Q(x * y),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    /// Multiplicative inverse. Panics on zero; callers check first.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Fp(pow_mod(*x as u64, *p as u64 - 2, *p as u64) as u32)
            }
            (Field::Rationals, Scalar::Q(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Q(x.recip())
            }
            _ => panic!("scalar does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.mul(a, &self.inv(b))
    }

    /// Uniform sample. Over the rationals, integers in `[0, bound)`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: u32) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Fp(rng.gen_range(0..*p)),
            Field::Rationals => self.from_i64(rng.gen_range(0..bound.max(2)) as i64),
        }
    }

    /// Signed integer representative used for printing: symmetric residues for F_p.
    pub fn display_value(&self, a: &Scalar) -> ScalarDisplay {
        match (self, a) {
            (Field::Prime(p), Scalar::Fp(x)) => {
                let v = if *x > p / 2 {
                    *x as i64 - *p as i64
                } else {
                    *x as i64
                };
                ScalarDisplay(BigRational::from_integer(BigInt::from(v)))
            }
            (_, Scalar::Q(q)) => ScalarDisplay(q.clone()),
            _ => panic!("scalar does not belong to field {self}"),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// Printable rational value of a scalar.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarDisplay(pub BigRational);

impl ScalarDisplay {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    pub fn abs(&self) -> ScalarDisplay {
        ScalarDisplay(self.0.abs())
    }
    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for ScalarDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime(32003));
        assert!(is_prime(2));
        assert!(!is_prime(32001));
        assert!(!is_prime(1));
        assert!(matches!(Field::prime(32002), Err(Error::NotPrime(32002))));
    }

    #[test]
    fn prime_field_inverse() {
        let f = Field::Prime(32003);
        for v in [1i64, 2, 17, 32002, -5] {
            let a = f.from_i64(v);
            assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
        }
    }

    #[test]
    fn rational_reduces_mod_p() {
        let f = Field::Prime(7);
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let h = f.from_rational(&half).unwrap();
        assert_eq!(f.mul(&h, &f.from_i64(2)), f.one());
        let bad = BigRational::new(BigInt::from(1), BigInt::from(7));
        assert!(f.from_rational(&bad).is_err());
    }
}
