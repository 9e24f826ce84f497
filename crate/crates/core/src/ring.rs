//! Graded quotient rings `R = S/I` with a cached reduced Gröbner basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::engine::{Basis, Space};
use crate::error::{Error, Result};
use crate::hilbert::{monomial_ideal_numerator, HilbertSeries};
use crate::monomial::MonomialOrder;
use crate::poly::{PolyRing, Polynomial};
use crate::scalar::Field;
use crate::vector::ModVec;

/// Structural properties of a ring. Declared values (fixtures) take
/// precedence; the rest are derived on demand by the homological layer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RingFlags {
    pub domain: Option<bool>,
    pub cohen_macaulay: Option<bool>,
    pub complete_intersection: Option<bool>,
    pub gorenstein: Option<bool>,
    pub isolated_singularity: Option<bool>,
}

pub struct RingPresentation {
    ambient: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    basis: Vec<Polynomial>,
    declared: RingFlags,
    pub(crate) derived: OnceLock<RingFlags>,
    pub(crate) label: String,
}

pub type Ring = Arc<RingPresentation>;

impl fmt::Debug for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]",
            self.ambient.field(),
            self.ambient.names().join(",")
        )?;
        if !self.generators.is_empty() {
            let g: Vec<String> = self.generators.iter().map(|p| p.to_string()).collect();
            write!(f, "/({})", g.join(", "))?;
        }
        Ok(())
    }
}

impl PartialEq for RingPresentation {
    fn eq(&self, o: &Self) -> bool {
        self.ambient == o.ambient && self.basis == o.basis
    }
}

impl RingPresentation {
    /// Build `S/(quotient)`; the reduced Gröbner basis is computed and cached.
    pub fn new(ambient: Arc<PolyRing>, quotient: Vec<Polynomial>) -> Result<Ring> {
        for g in &quotient {
            if !Arc::ptr_eq(g.ring(), &ambient) && **g.ring() != *ambient {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(g.to_string()));
            }
            if !g.is_zero() && g.homogeneous_degree() == Some(0) {
                return Err(Error::UnitIdeal);
            }
        }
        let quotient: Vec<Polynomial> = quotient.into_iter().filter(|g| !g.is_zero()).collect();
        let space = Space {
            field: ambient.field(),
            nvars: ambient.nvars(),
            weights: ambient.weights().clone(),
            comp_degrees: vec![0],
            order: ambient.module_order(),
        };
        let b = Basis::compute(space, quotient.iter().map(|p| p.as_vec().clone()).collect());
        let basis: Vec<Polynomial> = b
            .elems
            .into_iter()
            .map(|v| Polynomial::from_vec(&ambient, v))
            .collect();
        if basis.iter().any(|p| p.homogeneous_degree() == Some(0)) {
            return Err(Error::UnitIdeal);
        }
        Ok(Arc::new(RingPresentation {
            ambient,
            generators: quotient,
            basis,
            declared: RingFlags::default(),
            derived: OnceLock::new(),
            label: String::new(),
        }))
    }

    /// Convenience constructor from variable names and polynomial text.
    pub fn parse(
        field: Field,
        names: &[&str],
        order: MonomialOrder,
        quotient: &[&str],
    ) -> Result<Ring> {
        let s = PolyRing::new(field, names, order)?;
        let q = quotient
            .iter()
            .map(|t| Polynomial::parse(&s, t))
            .collect::<Result<Vec<_>>>()?;
        RingPresentation::new(s, q)
    }

    /// Same ring with declared structural flags.
    pub fn with_flags(self: &Ring, flags: RingFlags) -> Ring {
        Arc::new(RingPresentation {
            ambient: self.ambient.clone(),
            generators: self.generators.clone(),
            basis: self.basis.clone(),
            declared: flags,
            derived: OnceLock::new(),
            label: self.label.clone(),
        })
    }

    pub fn with_label(self: &Ring, label: &str) -> Ring {
        Arc::new(RingPresentation {
            ambient: self.ambient.clone(),
            generators: self.generators.clone(),
            basis: self.basis.clone(),
            declared: self.declared,
            derived: OnceLock::new(),
            label: label.to_string(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient(&self) -> &Arc<PolyRing> {
        &self.ambient
    }

    pub fn field(&self) -> Field {
        self.ambient.field()
    }

    pub fn nvars(&self) -> usize {
        self.ambient.nvars()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Cached reduced Gröbner basis of the quotient ideal.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn declared_flags(&self) -> RingFlags {
        self.declared
    }

    /// Declared flags, with the gaps filled in by computation.
    pub fn flags(&self) -> RingFlags {
        let d = *self.derived.get_or_init(|| crate::flags::derive(self));
        let c = self.declared;
        RingFlags {
            domain: c.domain.or(d.domain),
            cohen_macaulay: c.cohen_macaulay.or(d.cohen_macaulay),
            complete_intersection: c.complete_intersection.or(d.complete_intersection),
            gorenstein: c.gorenstein.or(d.gorenstein),
            isolated_singularity: c.isolated_singularity.or(d.isolated_singularity),
        }
    }

    pub fn is_domain(&self) -> bool {
        self.declared
            .domain
            .or_else(|| self.flags().domain)
            .unwrap_or(false)
    }

    /// Parse a polynomial in the ambient ring.
    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        Polynomial::parse(&self.ambient, text)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::var(&self.ambient, i)
    }

    /// Embedding dimension: degree-one variables minus independent linear
    /// forms in the quotient ideal.
    pub fn edim(&self) -> usize {
        let w = self.ambient.weights();
        let vars = w.iter().filter(|&&x| x == 1).count();
        let linear = self
            .basis
            .iter()
            .filter(|p| p.homogeneous_degree() == Some(1))
            .count();
        vars - linear
    }

    pub(crate) fn space(&self, comp_degrees: Vec<i64>) -> Space {
        Space {
            field: self.field(),
            nvars: self.nvars(),
            weights: self.ambient.weights().clone(),
            comp_degrees,
            order: self.ambient.module_order(),
        }
    }

    /// Quotient-ideal multiples `g * e_c` for components `offset..offset+rank`.
    pub(crate) fn ideal_vectors(&self, offset: usize, rank: usize) -> Vec<ModVec> {
        let mut out = Vec::with_capacity(self.basis.len() * rank);
        for c in offset..offset + rank {
            for g in &self.basis {
                out.push(g.on_comp(c));
            }
        }
        out
    }

    /// Normal form of a polynomial modulo the quotient ideal.
    pub fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.basis.is_empty() {
            return p.clone();
        }
        let b = Basis::new(
            self.space(vec![0]),
            self.basis.iter().map(|g| g.as_vec().clone()).collect(),
        );
        Polynomial::from_vec(&self.ambient, b.normal_form(p.as_vec()))
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        let leads: Vec<_> = self
            .basis
            .iter()
            .map(|g| g.lead().unwrap().0.clone())
            .collect();
        HilbertSeries::new(monomial_ideal_numerator(&leads), self.nvars())
    }

    /// Krull dimension of `R`.
    pub fn dim(&self) -> usize {
        self.hilbert_series().dimension().unwrap_or(0)
    }

    pub fn codim(&self) -> usize {
        self.edim().saturating_sub(self.dim())
    }

    pub fn same_ring(&self, o: &RingPresentation) -> bool {
        std::ptr::eq(self, o) || self == o
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_examples() {
        let rq = RingPresentation::parse(
            Field::Rationals,
            &["x", "y", "z"],
            MonomialOrder::Grevlex,
            &["x*y - z^2"],
        )
        .unwrap();
        assert_eq!(rq.basis().len(), 1);
        assert_eq!(rq.basis()[0], rq.poly("x*y - z^2").unwrap());
        assert_eq!(rq.edim(), 3);
        assert_eq!(rq.dim(), 2);
        assert_eq!(rq.codim(), 1);

        let s2 = RingPresentation::parse(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex, &[])
            .unwrap();
        assert!(s2.basis().is_empty());
        assert_eq!(s2.edim(), 2);

        let e = RingPresentation::parse(Field::Rationals, &["x"], MonomialOrder::Grevlex, &["x^2 - 1"]);
        assert!(matches!(e, Err(Error::NonHomogeneous(_))));
        let u = RingPresentation::parse(Field::Rationals, &["x"], MonomialOrder::Grevlex, &["3"]);
        assert!(matches!(u, Err(Error::UnitIdeal)));

        let lin = RingPresentation::parse(
            Field::Rationals,
            &["x", "y", "z"],
            MonomialOrder::Grevlex,
            &["x"],
        )
        .unwrap();
        assert_eq!(lin.edim(), 2);
    }

    #[test]
    fn cached_basis_is_deterministic() {
        let mk = || {
            RingPresentation::parse(
                Field::Rationals,
                &["a", "b", "c", "d"],
                MonomialOrder::Grevlex,
                &["a*c - b^2", "b*d - c^2", "a*d - b*c"],
            )
            .unwrap()
        };
        assert_eq!(mk().basis(), mk().basis());
    }
}
