//! Ambient polynomial rings and their elements.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{Field, Scalar};
use crate::vector::{ModVec, ModuleOrder, Term};

/// `k[x_1, ..., x_n]` with variable weights and a monomial order.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
    weights: Arc<[u32]>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: Field, names: &[&str], order: MonomialOrder) -> Result<Arc<PolyRing>> {
        let weights = vec![1; names.len()];
        PolyRing::weighted(field, names, &weights, order)
    }

    pub fn weighted(
        field: Field,
        names: &[&str],
        weights: &[u32],
        order: MonomialOrder,
    ) -> Result<Arc<PolyRing>> {
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
            if n.is_empty() || !n.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::UnknownVariable(n.to_string()));
            }
        }
        if weights.iter().any(|&w| w == 0) || weights.len() != names.len() {
            return Err(Error::Other("variable weights must be positive".into()));
        }
        Ok(Arc::new(PolyRing {
            field,
            names: names.iter().map(|s| s.to_string()).collect(),
            weights: weights.into(),
            order,
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &Arc<[u32]> {
        &self.weights
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn module_order(&self) -> ModuleOrder {
        ModuleOrder::top(self.order)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn standard_grading(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }
}

/// An element of an ambient [`PolyRing`]; terms sorted by the ring order.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    vec: ModVec,
}

impl PartialEq for Polynomial {
    fn eq(&self, o: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring) && self.vec == o.vec
    }
}
impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            vec: ModVec::zero(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Polynomial {
        Polynomial::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field.one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial::term(ring, ring.field.one(), Monomial::var(ring.nvars(), i))
    }

    pub fn term(ring: &Arc<PolyRing>, c: Scalar, m: Monomial) -> Polynomial {
        let vec = if c.is_zero() {
            ModVec::zero()
        } else {
            ModVec {
                terms: vec![Term { comp: 0, mono: m, coef: c }],
            }
        };
        Polynomial {
            ring: ring.clone(),
            vec,
        }
    }

    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Scalar)>) -> Polynomial {
        let terms = terms
            .into_iter()
            .map(|(mono, coef)| Term { comp: 0, mono, coef })
            .collect();
        Polynomial {
            ring: ring.clone(),
            vec: ModVec::from_terms(terms, &ring.module_order()),
        }
    }

    /// Wrap a rank-one vector (all terms on component 0).
    pub(crate) fn from_vec(ring: &Arc<PolyRing>, mut vec: ModVec) -> Polynomial {
        for t in &mut vec.terms {
            t.comp = 0;
        }
        vec.resort(&ring.module_order());
        Polynomial {
            ring: ring.clone(),
            vec,
        }
    }

    pub(crate) fn as_vec(&self) -> &ModVec {
        &self.vec
    }

    /// The polynomial placed on component `comp` of a free module.
    pub(crate) fn on_comp(&self, comp: usize) -> ModVec {
        ModVec {
            terms: self
                .vec
                .terms
                .iter()
                .map(|t| Term {
                    comp,
                    mono: t.mono.clone(),
                    coef: t.coef.clone(),
                })
                .collect(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.vec.terms.iter().map(|t| (&t.mono, &t.coef))
    }

    pub fn num_terms(&self) -> usize {
        self.vec.len()
    }

    pub fn lead(&self) -> Option<(&Monomial, &Scalar)> {
        self.vec.lead().map(|t| (&t.mono, &t.coef))
    }

    /// Constant coefficient (zero if absent).
    pub fn constant_coeff(&self) -> Scalar {
        self.terms()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Weighted degree when homogeneous; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let w = &self.ring.weights;
        let mut it = self.terms().map(|(m, _)| m.weighted_degree(w));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    fn check(&self, o: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &o.ring) || self.ring == o.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            vec: self.vec.add(&o.vec, &self.ring.module_order()),
        })
    }

    pub fn sub(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            vec: self.vec.sub(&o.vec, &self.ring.module_order()),
        })
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-&self.ring.field.one())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            vec: self.vec.scale(c),
        }
    }

    pub fn mul(&self, o: &Polynomial) -> Result<Polynomial> {
        self.check(o)?;
        let ord = self.ring.module_order();
        let (small, big) = if self.vec.len() <= o.vec.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut acc = ModVec::zero();
        for t in &small.vec.terms {
            acc = acc.axpy(&t.coef, &t.mono, &big.vec, &ord);
        }
        Ok(Polynomial {
            ring: self.ring.clone(),
            vec: acc,
        })
    }

    /// Multiply a free-module vector by this polynomial.
    pub(crate) fn mul_vec(&self, v: &ModVec, ord: &ModuleOrder) -> ModVec {
        let mut acc = ModVec::zero();
        for t in &self.vec.terms {
            acc = acc.axpy(&t.coef, &t.mono, v, ord);
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut r = Polynomial::one(&self.ring);
        for _ in 0..e {
            r = r.mul(self).expect("same ring");
        }
        r
    }

    /// Substitute `images[i]` for variable `i`; images live in `target`.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(target);
        for (m, c) in self.terms() {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e as u32))?;
                }
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Move to another ring via a variable index map.
    pub fn remap(&self, target: &Arc<PolyRing>, map: &[usize]) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            self.terms().map(|(m, c)| (m.remap(n, map), c.clone())).collect(),
        )
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let f = self.ring.field;
        let terms = self
            .terms()
            .filter(|(m, _)| m.exponents()[i] > 0)
            .map(|(m, c)| {
                let e = m.exponents()[i];
                let mut ex = m.exponents().to_vec();
                ex[i] -= 1;
                (Monomial::from_exponents(&ex), c * &f.from_i64(e as i64))
            })
            .collect();
        Polynomial::from_terms(&self.ring, terms)
    }

    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
        let mut p = PolyParser {
            ring,
            s: text.as_bytes(),
            pos: 0,
            depth: 0,
        };
        let r = p.expr()?;
        p.ws();
        if p.pos != p.s.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(r)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(&self.ring, m);
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn format_monomial(ring: &PolyRing, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.names[i].clone()),
            _ => parts.push(format!("{}^{}", ring.names[i], e)),
        }
    }
    parts.join("*")
}

/// Recursive-descent parser for polynomial text:
///
/// ```text
/// expr   := ['+'|'-'] term {('+'|'-') term}
/// term   := factor {['*'] factor}
/// factor := atom ['^' INT]
/// atom   := NUMBER ['/' NUMBER] | IDENT | '(' expr ')'
/// ```
///
/// An identifier that is not a variable but splits into single-letter
/// variable names (`xy`) is read as their product.
struct PolyParser<'a> {
    ring: &'a Arc<PolyRing>,
    s: &'a [u8],
    pos: usize,
    depth: usize,
}

const MAX_NESTING: usize = 64;
const MAX_EXPONENT: u32 = 1000;

impl PolyParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::PolySyntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return Err(self.err("nesting too deep"));
        }
        let mut acc = Polynomial::zero(self.ring);
        let mut sign = 1;
        match self.peek() {
            Some(b'-') => {
                sign = -1;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t)? } else { acc.add(&t)? };
            match self.peek() {
                Some(b'+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some(b'-') => {
                    sign = -1;
                    self.pos += 1;
                }
                _ => break,
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' || c == b'_' => {
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            if e > MAX_EXPONENT {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn number(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos - start > 200 {
            return Err(self.err("number too long"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected number"))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let field = self.ring.field;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = field.from_bigint(&self.number()?);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.ws();
                    let d = field.from_bigint(&self.number()?);
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    return Ok(Polynomial::constant(self.ring, n.div(&d)));
                }
                Ok(Polynomial::constant(self.ring, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len()
                    && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                if let Some(i) = self.ring.var_index(name) {
                    return Ok(Polynomial::var(self.ring, i));
                }
                // trailing digits belong to a coefficient-free name only if it
                // is a variable; otherwise try single-letter splitting
                let mut acc = Polynomial::one(self.ring);
                for ch in name.chars() {
                    match self.ring.var_index(&ch.to_string()) {
                        Some(i) => acc = acc.mul(&Polynomial::var(self.ring, i))?,
                        None => {
                            self.pos = start;
                            return Err(Error::UnknownVariable(name.to_string()));
                        }
                    }
                }
                Ok(acc)
            }
            _ => Err(self.err("expected number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Arc<PolyRing> {
        PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = s3();
        let p = |s: &str| Polynomial::parse(&r, s).unwrap();
        assert!(p("x").add(&p("-x")).unwrap().is_zero());
        assert_eq!(p("x*y").add(&p("z^2")).unwrap(), p("x*y + z^2"));
        assert_eq!(p("(x+y)").mul(&p("x-y")).unwrap(), p("x^2 - y^2"));
        assert_eq!(p("x*y - z^2").mul(&p("x*y + z^2")).unwrap(), p("x^2*y^2 - z^4"));
        assert_eq!(p("1").mul(&p("x*y-z^2")).unwrap(), p("x*y-z^2"));
        let f2 = PolyRing::new(Field::prime(2).unwrap(), &["x"], MonomialOrder::Grevlex).unwrap();
        let x = Polynomial::var(&f2, 0);
        assert!(x.add(&x).unwrap().is_zero());
    }

    #[test]
    fn parse_and_print() {
        let r = s3();
        let f = Polynomial::parse(&r, "2x^2y - 1/2*z^3 + xy").unwrap();
        assert_eq!(f.to_string(), "2*x^2*y - 1/2*z^3 + x*y");
        assert_eq!(Polynomial::parse(&r, &f.to_string()).unwrap(), f);
        assert!(Polynomial::parse(&r, "x + w").is_err());
        assert!(Polynomial::parse(&r, "x +").is_err());
        assert!(Polynomial::parse(&r, "x/0").is_err());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = s3();
        let b = PolyRing::new(Field::Rationals, &["u"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(
            Polynomial::var(&a, 0).add(&Polynomial::var(&b, 0)),
            Err(Error::RingMismatch)
        );
    }
}
