//! Exact scalar arithmetic over the rationals and prime fields.
//!
//! Everything downstream works over one of two coefficient fields: `Q`
//! (arbitrary-precision rationals) or `F_p` for a word-sized prime `p`.
//! There is no floating point anywhere in this crate; all vanishing
//! conditions are decided exactly.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt;

/// Tag identifying the coefficient field of a matrix, algebra or module.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum FieldTag {
    /// The rational numbers.
    Rational,
    /// The prime field `F_p`, `p` a word-sized prime.
    Prime(u64),
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// A scalar in one of the supported fields.
///
/// Rationals are kept reduced with positive denominator (the `BigRational`
/// normal form); residues are kept in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(x) => *x == 0,
        }
    }
}

impl FieldTag {
    pub fn zero(&self) -> Scalar {
        match self {
            FieldTag::Rational => Scalar::Rat(BigRational::zero()),
            FieldTag::Prime(_) => Scalar::Mod(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldTag::Rational => Scalar::Rat(BigRational::one()),
            FieldTag::Prime(_) => Scalar::Mod(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldTag::Rational => Scalar::Rat(BigRational::from(BigInt::from(n))),
            FieldTag::Prime(p) => Scalar::Mod((n as i128).rem_euclid(*p as i128) as u64),
        }
    }

    pub fn from_fraction(&self, num: i64, den: i64) -> Scalar {
        assert!(den != 0, "zero denominator");
        match self {
            FieldTag::Rational => {
                Scalar::Rat(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }
            FieldTag::Prime(_) => {
                let d = self.from_i64(den);
                self.mul(&self.from_i64(num), &self.inv(&d))
            }
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldTag::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (FieldTag::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            _ => panic!("mixed field tags in scalar arithmetic"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldTag::Rational, Scalar::Rat(x)) => Scalar::Rat(-x),
            (FieldTag::Prime(p), Scalar::Mod(x)) => Scalar::Mod(if *x == 0 { 0 } else { p - x }),
            _ => panic!("mixed field tags in scalar arithmetic"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldTag::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (FieldTag::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("mixed field tags in scalar arithmetic"),
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldTag::Rational, Scalar::Rat(x)) => {
                assert!(!x.is_zero(), "inverse of zero");
                Scalar::Rat(x.recip())
            }
            (FieldTag::Prime(p), Scalar::Mod(x)) => {
                assert!(*x != 0, "inverse of zero");
                Scalar::Mod(mod_inv(*x, *p))
            }
            _ => panic!("mixed field tags in scalar arithmetic"),
        }
    }

    /// True when `self` tags `s` correctly.
    pub fn owns(&self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (FieldTag::Rational, Scalar::Rat(_)) | (FieldTag::Prime(_), Scalar::Mod(_))
        )
    }

    /// Characteristic: 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rational => 0,
            FieldTag::Prime(p) => *p,
        }
    }
}

/// Extended-Euclid inverse of `a` mod `p`.
fn mod_inv(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert!(r == 1, "{a} not invertible mod {p}");
    (t.rem_euclid(p as i128)) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(x) => write!(f, "{x}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_reduces() {
        let q = FieldTag::Rational;
        let half = q.from_fraction(1, 2);
        let third = q.from_fraction(1, 3);
        let sum = q.add(&half, &third);
        assert_eq!(sum, q.from_fraction(5, 6));
        assert_eq!(q.mul(&half, &q.from_i64(2)), q.one());
        assert_eq!(q.from_fraction(2, 4), half);
        assert_eq!(q.from_fraction(-1, -2), half);
    }

    #[test]
    fn prime_field_inverses() {
        for p in [2u64, 3, 5, 7, 65521] {
            let f = FieldTag::Prime(p);
            for a in 1..p.min(50) {
                let inv = f.inv(&Scalar::Mod(a));
                assert_eq!(f.mul(&Scalar::Mod(a), &inv), f.one());
            }
        }
    }

    #[test]
    fn residues_stay_reduced() {
        let f = FieldTag::Prime(7);
        assert_eq!(f.from_i64(-1), Scalar::Mod(6));
        assert_eq!(f.from_i64(15), Scalar::Mod(1));
        assert_eq!(f.neg(&Scalar::Mod(0)), Scalar::Mod(0));
    }
}
