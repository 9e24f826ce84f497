//! Sparse vectors in a free module `S^r`, the working representation of the
//! Gröbner engine. Terms are kept sorted with the leading term first.

use std::cmp::Ordering;

use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: usize,
    pub mono: Monomial,
    pub coef: Scalar,
}

/// Term-over-position order on `S^r`; equal monomials are broken by
/// position with `e_0 > e_1 > ...`. When `block > 0`, every term on a
/// component below `block` dominates every term on the remaining components.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub block: usize,
}

impl ModuleOrder {
    pub fn top(mono: MonomialOrder) -> ModuleOrder {
        ModuleOrder { mono, block: 0 }
    }

    #[inline]
    pub fn cmp(&self, c1: usize, m1: &Monomial, c2: usize, m2: &Monomial) -> Ordering {
        if self.block > 0 {
            let (b1, b2) = (c1 < self.block, c2 < self.block);
            if b1 != b2 {
                return b1.cmp(&b2);
            }
        }
        self.mono.cmp(m1, m2).then_with(|| c2.cmp(&c1))
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(a.comp, &a.mono, b.comp, &b.mono)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ModVec {
    pub terms: Vec<Term>,
}

impl ModVec {
    pub fn zero() -> ModVec {
        ModVec { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Build from arbitrary terms: combines duplicates, drops zeros, sorts.
    pub fn from_terms(mut terms: Vec<Term>, ord: &ModuleOrder) -> ModVec {
        terms.sort_by(|a, b| ord.cmp_terms(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coef = &last.coef + &t.coef;
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.coef.is_zero());
        ModVec { terms: out }
    }

    pub fn unit(comp: usize, nvars: usize, one: Scalar) -> ModVec {
        ModVec {
            terms: vec![Term {
                comp,
                mono: Monomial::one(nvars),
                coef: one,
            }],
        }
    }

    pub fn resort(&mut self, ord: &ModuleOrder) {
        self.terms.sort_by(|a, b| ord.cmp_terms(b, a));
    }

    pub fn scale(&self, c: &Scalar) -> ModVec {
        if c.is_zero() {
            return ModVec::zero();
        }
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono.clone(),
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    /// `c * m * self`; monomial multiplication preserves the order.
    pub fn mul_term(&self, c: &Scalar, m: &Monomial) -> ModVec {
        if c.is_zero() {
            return ModVec::zero();
        }
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono.mul(m),
                    coef: &t.coef * c,
                })
                .collect(),
        }
    }

    pub fn add(&self, o: &ModVec, ord: &ModuleOrder) -> ModVec {
        self.axpy_owned(o.terms.iter().cloned(), ord)
    }

    pub fn sub(&self, o: &ModVec, ord: &ModuleOrder) -> ModVec {
        self.axpy_owned(
            o.terms.iter().map(|t| Term {
                comp: t.comp,
                mono: t.mono.clone(),
                coef: -&t.coef,
            }),
            ord,
        )
    }

    /// `self + c * m * o`.
    pub fn axpy(&self, c: &Scalar, m: &Monomial, o: &ModVec, ord: &ModuleOrder) -> ModVec {
        if c.is_zero() {
            return self.clone();
        }
        let trivial = m.is_one();
        self.axpy_owned(
            o.terms.iter().map(|t| Term {
                comp: t.comp,
                mono: if trivial { t.mono.clone() } else { t.mono.mul(m) },
                coef: &t.coef * c,
            }),
            ord,
        )
    }

    fn axpy_owned<I: Iterator<Item = Term>>(&self, other: I, ord: &ModuleOrder) -> ModVec {
        let mut out = Vec::with_capacity(self.terms.len() + 4);
        let mut a = self.terms.iter().peekable();
        let mut b = other.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ord.cmp_terms(x, y) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let y = b.next().unwrap();
                        let c = &x.coef + &y.coef;
                        if !c.is_zero() {
                            out.push(Term {
                                comp: x.comp,
                                mono: x.mono.clone(),
                                coef: c,
                            });
                        }
                    }
                },
            }
        }
        ModVec { terms: out }
    }

    /// Coordinates on component `c` as (monomial, coefficient) pairs.
    pub fn component(&self, c: usize) -> impl Iterator<Item = &Term> {
        self.terms.iter().filter(move |t| t.comp == c)
    }

    pub fn max_comp(&self) -> Option<usize> {
        self.terms.iter().map(|t| t.comp).max()
    }

    /// Relabel components; terms mapped to `None` are dropped.
    pub fn map_comps(&self, f: impl Fn(usize) -> Option<usize>, ord: &ModuleOrder) -> ModVec {
        let terms = self
            .terms
            .iter()
            .filter_map(|t| {
                f(t.comp).map(|c| Term {
                    comp: c,
                    mono: t.mono.clone(),
                    coef: t.coef.clone(),
                })
            })
            .collect();
        ModVec::from_terms(terms, ord)
    }

    /// Weighted degree `deg(mono) + comp_degree` of the leading term.
    pub fn lead_degree(&self, weights: &[u32], comp_degrees: &[i64]) -> Option<i64> {
        self.lead()
            .map(|t| t.mono.weighted_degree(weights) + comp_degrees[t.comp])
    }

    /// Homogeneity with respect to weights and component degrees.
    pub fn is_homogeneous(&self, weights: &[u32], comp_degrees: &[i64]) -> bool {
        let mut it = self
            .terms
            .iter()
            .map(|t| t.mono.weighted_degree(weights) + comp_degrees[t.comp]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Make the leading coefficient 1.
    pub fn monic(&self) -> ModVec {
        match self.lead() {
            None => ModVec::zero(),
            Some(t) if t.coef.is_one() => self.clone(),
            Some(t) => self.scale(&t.coef.inv().expect("nonzero lead")),
        }
    }
}
