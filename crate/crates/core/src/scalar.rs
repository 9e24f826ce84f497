//! Exact coefficient arithmetic: rationals and prime fields.
//!
//! Rationals use an `i64` fast path and fall back to arbitrary precision on
//! overflow. A value is always stored in its canonical form (small whenever
//! it fits), so derived equality and hashing are structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of a ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if p < 2 || p > (1 << 31) || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::Small(n, 1)),
            Field::Prime(p) => Scalar::Fp {
                v: n.rem_euclid(p as i64) as u32,
                p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rationals => Scalar::Q(Rat::from_big(BigRational::from_integer(n.clone()))),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                Scalar::Fp {
                    v: r.to_u32().unwrap_or(0),
                    p,
                }
            }
        }
    }

    pub fn contains(self, s: &Scalar) -> bool {
        matches!(
            (self, s),
            (Field::Rationals, Scalar::Q(_)) | (Field::Prime(_), Scalar::Fp { .. })
        ) && match (self, s) {
            (Field::Prime(p), Scalar::Fp { p: q, .. }) => p == *q,
            _ => true,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Rational number with a machine-word fast path.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rat {
    /// numerator, denominator (> 0), reduced
    Small(i64, i64),
    Big(BigRational),
}

impl Rat {
    fn from_big(r: BigRational) -> Rat {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            // Keep i64::MIN out of the fast path so negation never overflows.
            if n != i64::MIN && d != i64::MIN {
                return Rat::Small(n, d);
            }
        }
        Rat::Big(r)
    }

    fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Rat::Big(r) => r.clone(),
        }
    }

    fn small(n: i128, d: i128) -> Rat {
        let g = n.gcd(&d);
        let (mut n, mut d) = if g == 0 { (0, 1) } else { (n / g, d / g) };
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_add(*c) {
                        if s != i64::MIN {
                            return Rat::Small(s, 1);
                        }
                    }
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a.checked_mul(d), c.checked_mul(b), b.checked_mul(d)) {
                    (Some(x), Some(y), Some(z)) => match x.checked_add(y) {
                        Some(s) => Rat::small(s, z),
                        None => Rat::from_big(self.to_big() + o.to_big()),
                    },
                    _ => Rat::from_big(self.to_big() + o.to_big()),
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    if let Some(s) = a.checked_mul(*c) {
                        if s != i64::MIN {
                            return Rat::Small(s, 1);
                        }
                    }
                }
                Rat::small(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    fn neg(&self) -> Rat {
        match self {
            Rat::Small(a, b) => Rat::Small(-a, *b),
            Rat::Big(r) => Rat::from_big(-r.clone()),
        }
    }

    fn inv(&self) -> Option<Rat> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(a, b) => Some(if *a < 0 { Rat::Small(-b, -a) } else { Rat::Small(*b, *a) }),
            Rat::Big(r) => {
                if r.is_zero() {
                    None
                } else {
                    Some(Rat::from_big(r.recip()))
                }
            }
        }
    }

    fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    fn is_negative(&self) -> bool {
        match self {
            Rat::Small(a, _) => *a < 0,
            Rat::Big(r) => r.is_negative(),
        }
    }
}

/// A field element. Arithmetic between elements of different fields panics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Rat),
    Fp { v: u32, p: u32 },
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(r) => r.inv().map(Scalar::Q),
            Scalar::Fp { v, p } => {
                if *v == 0 {
                    None
                } else {
                    Some(Scalar::Fp {
                        v: pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32,
                        p: *p,
                    })
                }
            }
        }
    }

    pub fn div(&self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero scalar")
    }

    /// True when the printed form starts with a minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_negative(),
            Scalar::Fp { .. } => false,
        }
    }

    /// Integer value when the element is an integer of machine size.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Q(Rat::Small(n, 1)) => Some(*n),
            Scalar::Q(_) => None,
            Scalar::Fp { v, .. } => Some(*v as i64),
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

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self + &(-o)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, p: q }) if p == q => Scalar::Fp {
                v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                p: *p,
            },
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp { v, p } => Scalar::Fp {
                v: if *v == 0 { 0 } else { p - v },
                p: *p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(Rat::Small(n, 1)) => write!(f, "{n}"),
            Scalar::Q(Rat::Small(n, d)) => write!(f, "{n}/{d}"),
            Scalar::Q(Rat::Big(r)) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_overflow_promotes_and_demotes() {
        let q = Field::Rationals;
        let big = q.from_i64(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Scalar::Q(Rat::Big(_))));
        let back = &s - &big;
        assert_eq!(back, big);
        let half = q.from_i64(1).div(&q.from_i64(2));
        assert_eq!(&half + &half, q.one());
        assert_eq!(format!("{}", q.from_i64(-3).div(&q.from_i64(6))), "-1/2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        assert_eq!(&three * &three.inv().unwrap(), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        let two = Field::prime(2).unwrap();
        assert!((&two.one() + &two.one()).is_zero());
        assert!(Field::prime(9).is_err());
    }
}
