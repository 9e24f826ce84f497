//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

pub type Exponents = SmallVec<[u16; 12]>;

/// A monomial `x^a` stored densely. `deg` is the plain sum of exponents;
/// `mask` has bit `i` set when variable `i` (mod 64) occurs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Exponents,
    deg: u32,
    mask: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            deg: 0,
            mask: 0,
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        let exps: Exponents = exps.iter().copied().collect();
        let (deg, mask) = summarize(&exps);
        Monomial { exps, deg, mask }
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m.mask = 1 << (i % 64);
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> i64 {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w as i64)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let exps: Exponents = self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect();
        Monomial {
            exps,
            deg: self.deg + o.deg,
            mask: self.mask | o.mask,
        }
    }

    pub fn divides(&self, o: &Monomial) -> bool {
        self.mask & !o.mask == 0
            && self.deg <= o.deg
            && self.exps.iter().zip(&o.exps).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self` divides `o`.
    pub fn quotient_of(&self, o: &Monomial) -> Monomial {
        let exps: Exponents = o.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect();
        let (deg, mask) = summarize(&exps);
        Monomial { exps, deg, mask }
    }

    pub fn lcm(&self, o: &Monomial) -> Monomial {
        let exps: Exponents = self
            .exps
            .iter()
            .zip(&o.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let (deg, mask) = summarize(&exps);
        Monomial { exps, deg, mask }
    }

    pub fn gcd_is_one(&self, o: &Monomial) -> bool {
        self.mask & o.mask == 0 && self.exps.iter().zip(&o.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Remove the variable `i` entirely (exponent set to 0).
    pub fn without_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = 0;
        let (deg, mask) = summarize(&exps);
        Monomial { exps, deg, mask }
    }

    /// Monomial in a larger or smaller variable set via an index map
    /// (`map[i]` is the new position of variable `i`).
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Monomial {
        let mut exps: Exponents = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        let (deg, mask) = summarize(&exps);
        Monomial { exps, deg, mask }
    }
}

fn summarize(exps: &[u16]) -> (u32, u64) {
    let mut deg = 0u32;
    let mut mask = 0u64;
    for (i, &e) in exps.iter().enumerate() {
        if e > 0 {
            deg += e as u32;
            mask |= 1 << (i % 64);
        }
    }
    (deg, mask)
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Monomial orders on the ambient ring.
///
/// `Eliminate(k)` is the block order with the first `k` variables in a
/// grevlex block that dominates a grevlex block on the remaining ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    Eliminate(usize),
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(&a.exps, &b.exps, a.deg, b.deg),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Eliminate(k) => {
                let (a1, a2) = a.exps.split_at(k.min(a.exps.len()));
                let (b1, b2) = b.exps.split_at(k.min(b.exps.len()));
                let da: u32 = a1.iter().map(|&e| e as u32).sum();
                let db: u32 = b1.iter().map(|&e| e as u32).sum();
                grevlex(a1, b1, da, db).then_with(|| grevlex(a2, b2, a.deg - da, b.deg - db))
            }
        }
    }
}

fn grevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_basics() {
        let o = MonomialOrder::Grevlex;
        // x > y > z, and xz < y^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn lex_and_elimination() {
        assert_eq!(MonomialOrder::Lex.cmp(&m(&[1, 0]), &m(&[0, 5])), Ordering::Greater);
        let e = MonomialOrder::Eliminate(1);
        assert_eq!(e.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 3])), Ordering::Greater);
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), m(&[1, 0, 1]));
        assert_eq!(a.lcm(&m(&[0, 3, 1])), m(&[1, 3, 1]));
        assert!(m(&[1, 0]).gcd_is_one(&m(&[0, 4])));
    }
}
