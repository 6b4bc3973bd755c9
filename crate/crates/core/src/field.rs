//! Exact ground fields: prime fields `F_p` and the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field every computation is carried out over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Prime(u64),
    Rational,
}

/// An element of a [`Field`]. Prime-field elements are kept reduced in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p > u32::MAX as u64 {
            return Err(Error::Input(format!("prime {p} too large (must fit in 32 bits)")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(1),
            Field::Rational => Scalar::Rat(BigRational::one()),
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let p = *p as i128;
                Scalar::Mod((v as i128).rem_euclid(p) as u64)
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: i64) -> Scalar {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        match self {
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = ((num % &pb) + &pb) % &pb;
                let d = ((den % &pb) + &pb) % &pb;
                let d = d.to_u64().unwrap_or(0);
                if d == 0 {
                    return Err(Error::Input(format!("denominator divisible by {p}")));
                }
                let n = Scalar::Mod(n.to_u64().unwrap_or(0));
                Ok(self.mul(&n, &self.inv(&Scalar::Mod(d))))
            }
            Field::Rational => Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone()))),
        }
    }

    /// Parses `"n"`, `"-n"` or `"p/q"`.
    pub fn parse(&self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        let bad = || Error::Input(format!("malformed scalar {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        self.from_ratio(&n, &d)
    }

    /// Canonical text form: residues print as `0..p`, rationals in lowest terms.
    pub fn format(&self, a: &Scalar) -> String {
        match a {
            Scalar::Mod(v) => v.to_string(),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
        }
    }

    /// Small-integer representative, used when writing JSON numbers.
    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Mod(v) => i64::try_from(*v).ok(),
            Scalar::Rat(r) if r.denom().is_one() => r.numer().to_i64(),
            Scalar::Rat(_) => None,
        }
    }

    #[inline]
    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => mismatch(),
        }
    }

    #[inline]
    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + p - y) % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            _ => mismatch(),
        }
    }

    #[inline]
    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % p),
            (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => mismatch(),
        }
    }

    #[inline]
    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => Scalar::Mod((p - x) % p),
            (Field::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            _ => mismatch(),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Mod(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Mod(pow_mod(*x, p - 2, *p))
            }
            (Field::Rational, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
            _ => mismatch(),
        }
    }

    /// Every element of a prime field, in order. `None` over the rationals.
    pub fn elements(&self) -> Option<impl Iterator<Item = Scalar>> {
        match self {
            Field::Prime(p) => Some((0..*p).map(Scalar::Mod)),
            Field::Rational => None,
        }
    }
}

impl Scalar {
    #[inline]
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn is_negative_rational(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_negative())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F_{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

#[cold]
fn mismatch() -> ! {
    panic!("scalar does not belong to the field it is combined in")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check() {
        assert!(Field::prime(101).is_ok());
        assert!(matches!(Field::prime(100), Err(Error::NotPrime(100))));
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn modular_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(-3);
        assert_eq!(a, Scalar::Mod(4));
        assert_eq!(f.mul(&a, &f.inv(&a)), f.one());
        assert_eq!(f.parse("1/2").unwrap(), Scalar::Mod(4));
        assert!(f.parse("1/7").is_err());
    }

    #[test]
    fn rational_format_roundtrip() {
        let f = Field::Rational;
        let x = f.parse("-6/4").unwrap();
        assert_eq!(f.format(&x), "-3/2");
        assert_eq!(f.parse(&f.format(&x)).unwrap(), x);
        assert_eq!(f.sign(3), f.from_i64(-1));
    }
}
