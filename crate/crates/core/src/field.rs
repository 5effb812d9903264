//! Exact scalars over a prime field `F_p` or the rationals.
//!
//! Every scalar carries its field and is kept in canonical form (residue in
//! `[0, p)`, reduced fraction with positive denominator), so equality of
//! scalars, matrices and subspaces is bit-exact.

use crate::error::{Error, Result};
use num::rational::BigRational;
use num::{BigInt, One, Zero};
use std::fmt;

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// Prime field `F_p`.
    Fp(u64),
    /// The rational numbers.
    Rationals,
}

impl Field {
    /// Constructs `F_p`, verifying primality by trial division.
    pub fn prime(p: u64) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Fp(p))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Field::Fp(_))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { p: *p, value: 0 },
            Field::Rationals => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Fp(p) => Scalar::Fp { p: *p, value: 1 % *p },
            Field::Rationals => Scalar::Rat(BigRational::one()),
        }
    }

    /// Scalar from a signed integer, canonicalized into the field.
    pub fn from_int(&self, n: i64) -> Scalar {
        match self {
            Field::Fp(p) => {
                let m = n.rem_euclid(*p as i64) as u64;
                Scalar::Fp { p: *p, value: m }
            }
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Scalar from a fraction; errors in `F_p` when the denominator vanishes mod p.
    pub fn from_fraction(&self, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::Invalid("zero denominator".into()));
        }
        match self {
            Field::Fp(_) => {
                let d = self.from_int(den);
                if d.is_zero() {
                    return Err(Error::Invalid(format!(
                        "denominator {den} vanishes in {self}"
                    )));
                }
                Ok(self.from_int(num).mul(&d.inv()?))
            }
            Field::Rationals => Ok(Scalar::Rat(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
        }
    }

    /// Every element of a finite field, in canonical order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self {
            Field::Fp(p) => Ok((0..*p).map(|v| Scalar::Fp { p: *p, value: v }).collect()),
            Field::Rationals => Err(Error::InfiniteField),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Fp(p) => write!(f, "F{p}"),
            Field::Rationals => write!(f, "QQ"),
        }
    }
}

/// A canonical field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Fp { p: u64, value: u64 },
    Rat(BigRational),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Fp { p, .. } => Field::Fp(*p),
            Scalar::Rat(_) => Field::Rationals,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp { value, .. } => *value == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp { p, value } => *value == 1 % *p,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Fp { p, value: a }, Scalar::Fp { p: q, value: b }) => {
                assert_eq!(p, q, "scalar fields differ");
                Scalar::Fp {
                    p: *p,
                    value: ((*a as u128 + *b as u128) % *p as u128) as u64,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("scalar fields differ"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Fp { p, value } => Scalar::Fp {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Fp { p, value: a }, Scalar::Fp { p: q, value: b }) => {
                assert_eq!(p, q, "scalar fields differ");
                Scalar::Fp {
                    p: *p,
                    value: ((*a as u128 * *b as u128) % *p as u128) as u64,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("scalar fields differ"),
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Invalid("inverse of zero".into()));
        }
        match self {
            Scalar::Fp { p, value } => {
                // Fermat: value^(p-2) mod p.
                let mut base = *value as u128;
                let m = *p as u128;
                let mut exp = *p - 2;
                let mut acc: u128 = 1;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    exp >>= 1;
                }
                Ok(Scalar::Fp {
                    p: *p,
                    value: acc as u64,
                })
            }
            Scalar::Rat(r) => Ok(Scalar::Rat(r.recip())),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp { value, .. } => write!(f, "{value}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parses a scalar literal: an integer, or `a/b` over the rationals.
pub fn parse_scalar(field: &Field, text: &str) -> Result<Scalar> {
    let text = text.trim();
    if let Some((num, den)) = text.split_once('/') {
        let n: i64 = num
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad numerator {num:?}")))?;
        let d: i64 = den
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad denominator {den:?}")))?;
        field.from_fraction(n, d)
    } else {
        let n: i64 = text
            .parse()
            .map_err(|_| Error::Invalid(format!("bad scalar literal {text:?}")))?;
        Ok(field.from_int(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_check_rejects_composites() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(97).is_ok());
        assert!(matches!(Field::prime(1), Err(Error::NotPrime(1))));
        assert!(matches!(Field::prime(6), Err(Error::NotPrime(6))));
    }

    #[test]
    fn fp_arithmetic_is_canonical() {
        let f5 = Field::prime(5).unwrap();
        let a = f5.from_int(7);
        assert_eq!(a, f5.from_int(2));
        assert_eq!(a.add(&f5.from_int(3)), f5.zero());
        assert_eq!(f5.from_int(3).mul(&f5.from_int(4)), f5.from_int(2));
        assert_eq!(f5.from_int(-1), f5.from_int(4));
    }

    #[test]
    fn fp_inverse() {
        let f7 = Field::prime(7).unwrap();
        for v in 1..7 {
            let x = f7.from_int(v);
            assert!(x.mul(&x.inv().unwrap()).is_one());
        }
        assert!(f7.zero().inv().is_err());
    }

    #[test]
    fn rational_canonical_form() {
        let q = Field::Rationals;
        let half = q.from_fraction(2, 4).unwrap();
        assert_eq!(half, q.from_fraction(1, 2).unwrap());
        assert_eq!(half.to_string(), "1/2");
        let neg = q.from_fraction(1, -2).unwrap();
        assert_eq!(neg.to_string(), "-1/2");
        assert_eq!(neg.add(&half), q.zero());
    }

    #[test]
    fn parse_round_trip() {
        let q = Field::Rationals;
        for text in ["0", "-3", "5/3", "-7/2"] {
            let s = parse_scalar(&q, text).unwrap();
            assert_eq!(s.to_string(), text);
        }
        let f3 = Field::prime(3).unwrap();
        assert_eq!(parse_scalar(&f3, "5").unwrap(), f3.from_int(2));
        assert_eq!(parse_scalar(&f3, "1/2").unwrap(), f3.from_int(2));
    }
}
