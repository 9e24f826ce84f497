//! Gröbner bases of submodules of free modules over the ambient ring, and
//! the derived operations: normal forms, syzygies, ideal quotients,
//! saturation, elimination, Hilbert series.
//!
//! Computations over a quotient `R = S/I` are reduced to the ambient ring by
//! adjoining `I * e_c` for every component `c`.

use std::sync::Arc;

use crate::engine::{Basis, Engine, Input, Space};
use crate::error::{Error, Result};
use crate::hilbert::{monomial_ideal_numerator, HilbertSeries, Laurent};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::RingPresentation;
use crate::vector::{ModVec, ModuleOrder, Term};

/// An element of `S^r` given by its coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeElement {
    ring: Arc<PolyRing>,
    coords: Vec<Polynomial>,
}

impl FreeElement {
    pub fn new(ring: &Arc<PolyRing>, coords: Vec<Polynomial>) -> Result<FreeElement> {
        if coords.iter().any(|c| c.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(FreeElement {
            ring: ring.clone(),
            coords,
        })
    }

    pub fn from_polys(coords: Vec<Polynomial>) -> Result<FreeElement> {
        let ring = coords.first().ok_or(Error::ZeroElement)?.ring().clone();
        FreeElement::new(&ring, coords)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.coords
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub(crate) fn to_vec(&self) -> ModVec {
        let terms = self
            .coords
            .iter()
            .enumerate()
            .flat_map(|(c, p)| p.on_comp(c).terms)
            .collect();
        ModVec::from_terms(terms, &self.ring.module_order())
    }

    pub(crate) fn from_vec(ring: &Arc<PolyRing>, rank: usize, v: &ModVec) -> FreeElement {
        let mut parts: Vec<Vec<Term>> = vec![Vec::new(); rank];
        for t in &v.terms {
            parts[t.comp].push(t.clone());
        }
        FreeElement {
            ring: ring.clone(),
            coords: parts
                .into_iter()
                .map(|ts| Polynomial::from_vec(ring, ModVec { terms: ts }))
                .collect(),
        }
    }
}

/// A reduced Gröbner basis of a submodule of `S^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    rank: usize,
    elements: Vec<FreeElement>,
    basis: Basis,
}

impl GroebnerBasis {
    pub fn elements(&self) -> &[FreeElement] {
        &self.elements
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Monic leads, and no term of an element is divisible by the lead of
    /// another (or by its own lead, past the lead itself).
    pub fn is_reduced(&self) -> bool {
        let g = &self.basis.elems;
        g.iter().enumerate().all(|(i, a)| {
            a.lead().is_some_and(|t| t.coef.is_one())
                && a.terms.iter().enumerate().all(|(k, t)| {
                    g.iter().enumerate().all(|(j, b)| {
                        let l = b.lead().unwrap();
                        (i == j && k == 0) || l.comp != t.comp || !l.mono.divides(&t.mono)
                    })
                })
        })
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Leading terms as (component, monomial).
    pub fn lead_terms(&self) -> Vec<(usize, Monomial)> {
        self.basis
            .elems
            .iter()
            .map(|g| {
                let t = g.lead().unwrap();
                (t.comp, t.mono.clone())
            })
            .collect()
    }

    /// Buchberger's criterion checked after the fact.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let ord = self.ring.module_order();
        let g = &self.basis.elems;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (a, b) = (g[i].lead().unwrap(), g[j].lead().unwrap());
                if a.comp != b.comp {
                    continue;
                }
                let l = a.mono.lcm(&b.mono);
                let s = g[i]
                    .mul_term(&b.coef, &a.mono.quotient_of(&l))
                    .axpy(&-&a.coef, &b.mono.quotient_of(&l), &g[j], &ord);
                if !self.basis.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

fn space_for(ring: &Arc<PolyRing>, rank: usize) -> Space {
    Space {
        field: ring.field(),
        nvars: ring.nvars(),
        weights: ring.weights().clone(),
        comp_degrees: vec![0; rank],
        order: ring.module_order(),
    }
}

/// Reduced Gröbner basis of the submodule generated by `gens` in `S^rank`.
pub fn groebner(ring: &Arc<PolyRing>, gens: &[FreeElement], rank: usize) -> Result<GroebnerBasis> {
    for g in gens {
        if g.rank() != rank {
            return Err(Error::RankMismatch {
                expected: rank,
                found: g.rank(),
            });
        }
        if g.ring() != ring {
            return Err(Error::RingMismatch);
        }
    }
    let sp = space_for(ring, rank);
    let basis = Basis::compute(sp, gens.iter().map(|g| g.to_vec()).collect());
    let elements = basis
        .elems
        .iter()
        .map(|v| FreeElement::from_vec(ring, rank, v))
        .collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        rank,
        elements,
        basis,
    })
}

pub fn normal_form(v: &FreeElement, g: &GroebnerBasis) -> Result<FreeElement> {
    if v.rank() != g.rank {
        return Err(Error::RankMismatch {
            expected: g.rank,
            found: v.rank(),
        });
    }
    let r = g.basis.normal_form(&v.to_vec());
    Ok(FreeElement::from_vec(&g.ring, g.rank, &r))
}

/// Generators of the syzygy module of the ordered generators.
pub fn syzygies(ring: &Arc<PolyRing>, gens: &[FreeElement]) -> Result<Vec<FreeElement>> {
    let rank = gens.first().map(|g| g.rank()).unwrap_or(0);
    if gens.iter().any(|g| g.rank() != rank) {
        return Err(Error::RankMismatch {
            expected: rank,
            found: gens.iter().map(|g| g.rank()).find(|&r| r != rank).unwrap(),
        });
    }
    let sp = space_for(ring, rank);
    let cols: Vec<ModVec> = gens.iter().map(|g| g.to_vec()).collect();
    let degs = column_degrees(&sp, &cols);
    let k = kernel_raw(&sp, &cols, &degs, &[], &[], &[]);
    Ok(k.iter()
        .map(|v| FreeElement::from_vec(ring, gens.len(), v))
        .collect())
}

/// Degrees making the columns homogeneous of degree zero maps
/// (zero columns get degree 0).
pub(crate) fn column_degrees(sp: &Space, cols: &[ModVec]) -> Vec<i64> {
    cols.iter().map(|c| sp.degree_of(c).unwrap_or(0)).collect()
}

/// Gröbner basis of the graph of a map `S^m -> S^r / (rels)`, for an order
/// eliminating the target components. The part lying in the source block
/// generates the kernel; reducing `(v, 0)` expresses `v` through the columns.
pub(crate) struct Augmented {
    basis: Basis,
    r: usize,
    m: usize,
}

impl Augmented {
    pub(crate) fn new(
        target: &Space,
        cols: &[ModVec],
        source_degrees: &[i64],
        rels: &[ModVec],
        extra_source: &[ModVec],
    ) -> Augmented {
        let r = target.rank();
        let m = cols.len();
        let mut degrees = target.comp_degrees.clone();
        degrees.extend_from_slice(source_degrees);
        let sp = Space {
            order: ModuleOrder {
                mono: target.order.mono,
                block: r,
            },
            comp_degrees: degrees,
            ..target.clone()
        };
        let one = target.field.one();
        let nv = target.nvars;
        let mut inputs = Vec::with_capacity(m + rels.len() + extra_source.len());
        for v in rels {
            inputs.push(Input::extra(v.clone()));
        }
        for v in extra_source {
            inputs.push(Input::extra(shift_comps(v, r)));
        }
        for (j, c) in cols.iter().enumerate() {
            let mut terms = c.terms.clone();
            terms.push(Term {
                comp: r + j,
                mono: Monomial::one(nv),
                coef: one.clone(),
            });
            inputs.push(Input::counted(ModVec { terms }));
        }
        let out = Engine::run(sp.clone(), inputs);
        Augmented {
            basis: Basis::new(sp, out.basis),
            r,
            m,
        }
    }

    /// Generators of `{ a : sum a_j cols_j in span(rels) }` (plus `extra_source`).
    pub(crate) fn kernel(&self) -> Vec<ModVec> {
        let r = self.r;
        let canon = ModuleOrder::top(self.basis.space.order.mono);
        self.basis
            .elems
            .iter()
            .filter(|v| v.lead().unwrap().comp >= r)
            .map(|v| v.map_comps(|c| c.checked_sub(r), &canon))
            .collect()
    }

    /// Coefficients `a` with `v = sum a_j cols_j` modulo `rels`, if any.
    pub(crate) fn lift(&self, v: &ModVec) -> Option<ModVec> {
        let nf = self.basis.normal_form(v);
        if nf.terms.iter().any(|t| t.comp < self.r) {
            return None;
        }
        let canon = ModuleOrder::top(self.basis.space.order.mono);
        debug_assert!(nf.max_comp().map_or(true, |c| c < self.r + self.m));
        Some(nf.scale(&-&self.basis.space.field.one()).map_comps(|c| c.checked_sub(self.r), &canon))
    }
}

/// Generators of `{ a in S^m : sum a_j cols_j in span(rels) + span(extra_target) }`.
pub(crate) fn kernel_raw(
    target: &Space,
    cols: &[ModVec],
    source_degrees: &[i64],
    rels: &[ModVec],
    extra_target: &[ModVec],
    extra_source: &[ModVec],
) -> Vec<ModVec> {
    let mut all = extra_target.to_vec();
    all.extend_from_slice(rels);
    Augmented::new(target, cols, source_degrees, &all, extra_source).kernel()
}

fn shift_comps(v: &ModVec, by: usize) -> ModVec {
    ModVec {
        terms: v
            .terms
            .iter()
            .map(|t| Term {
                comp: t.comp + by,
                mono: t.mono.clone(),
                coef: t.coef.clone(),
            })
            .collect(),
    }
}

/// Indices of a minimal generating subset of `gens` modulo `extra`.
pub(crate) fn minimal_subset(sp: &Space, gens: &[ModVec], extra: &[ModVec]) -> Vec<usize> {
    let mut inputs: Vec<Input> = extra.iter().cloned().map(Input::extra).collect();
    inputs.extend(gens.iter().cloned().map(Input::counted));
    let mut idx = Engine::run(sp.clone(), inputs).minimal;
    idx.sort_unstable();
    idx
}

fn ring_space(ring: &Arc<PolyRing>) -> Space {
    space_for(ring, 1)
}

fn polys_to_vecs(ps: &[Polynomial]) -> Vec<ModVec> {
    ps.iter().map(|p| p.as_vec().clone()).collect()
}

fn vecs_to_polys(ring: &Arc<PolyRing>, vs: Vec<ModVec>) -> Vec<Polynomial> {
    vs.into_iter().map(|v| Polynomial::from_vec(ring, v)).collect()
}

/// `(I : J)` in the ambient ring.
pub fn ideal_quotient(
    ring: &Arc<PolyRing>,
    i: &[Polynomial],
    j: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    let j: Vec<&Polynomial> = j.iter().filter(|p| !p.is_zero()).collect();
    if j.is_empty() {
        return Ok(vec![Polynomial::one(ring)]);
    }
    let k = j.len();
    let sp = space_for(ring, k);
    let col = ModVec::from_terms(
        j.iter().enumerate().flat_map(|(c, p)| p.on_comp(c).terms).collect(),
        &sp.order,
    );
    // target degrees chosen so the column is homogeneous of degree 0
    let sp = sp.with_degrees(j.iter().map(|p| -p.homogeneous_degree().unwrap_or(0)).collect());
    let mut rels = Vec::new();
    for c in 0..k {
        for g in i {
            rels.push(g.on_comp(c));
        }
    }
    let gens = kernel_raw(&sp, &[col], &[0], &rels, &[], &[]);
    Ok(reduced_ideal(ring, gens))
}

fn reduced_ideal(ring: &Arc<PolyRing>, gens: Vec<ModVec>) -> Vec<Polynomial> {
    let b = Basis::compute(ring_space(ring), gens);
    vecs_to_polys(ring, b.elems)
}

/// `N : f^infinity` for a submodule `N` of `S^rank`; iterates ideal
/// quotients until the reduced basis stabilizes.
pub fn saturate(
    ring: &Arc<PolyRing>,
    gens: &[FreeElement],
    rank: usize,
    f: &Polynomial,
) -> Result<Vec<FreeElement>> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let sp = space_for(ring, rank);
    let mut current = Basis::compute(sp.clone(), gens.iter().map(|g| g.to_vec()).collect());
    loop {
        let next = colon_by(&sp, &current.elems, f, &[]);
        let next = Basis::compute(sp.clone(), next);
        if next.elems == current.elems {
            break;
        }
        current = next;
    }
    Ok(current
        .elems
        .iter()
        .map(|v| FreeElement::from_vec(ring, rank, v))
        .collect())
}

/// `{ v : f v in span(n) + span(extra) }`.
pub(crate) fn colon_by(sp: &Space, n: &[ModVec], f: &Polynomial, extra: &[ModVec]) -> Vec<ModVec> {
    let rank = sp.rank();
    let fd = f.homogeneous_degree().unwrap_or(0);
    let cols: Vec<ModVec> = (0..rank)
        .map(|c| f.mul_vec(&ModVec::unit(c, sp.nvars, sp.field.one()), &sp.order))
        .collect();
    let degs: Vec<i64> = sp.comp_degrees.iter().map(|d| d + fd).collect();
    let target = sp.clone();
    let mut k = kernel_raw(&target, &cols, &degs, n, extra, &[]);
    // kernel lives on source degrees shifted by deg f; same components
    k.retain(|v| !v.is_zero());
    k
}

/// Generators of `I ∩ k[keep]` via a block elimination order.
pub fn eliminate(
    ring: &Arc<PolyRing>,
    ideal: &[Polynomial],
    keep: &[usize],
) -> Result<Vec<Polynomial>> {
    let n = ring.nvars();
    let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    if elim.is_empty() {
        return Ok(reduced_ideal(ring, polys_to_vecs(ideal)));
    }
    // permute: eliminated variables first
    let perm: Vec<usize> = elim.iter().chain(keep.iter()).copied().collect();
    let mut to_new = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        to_new[old] = new;
    }
    let names: Vec<&str> = perm.iter().map(|&i| ring.names()[i].as_str()).collect();
    let weights: Vec<u32> = perm.iter().map(|&i| ring.weights()[i]).collect();
    let er = PolyRing::weighted(
        ring.field(),
        &names,
        &weights,
        MonomialOrder::Eliminate(elim.len()),
    )?;
    let gens: Vec<ModVec> = ideal.iter().map(|p| p.remap(&er, &to_new).as_vec().clone()).collect();
    let b = Basis::compute(ring_space(&er), gens);
    let back: Vec<usize> = perm.clone();
    let mut out: Vec<Polynomial> = b
        .elems
        .into_iter()
        .filter(|v| {
            v.terms
                .iter()
                .all(|t| t.mono.exponents()[..elim.len()].iter().all(|&e| e == 0))
        })
        .map(|v| Polynomial::from_vec(&er, v).remap(ring, &back))
        .collect();
    // re-reduce in the original order for a canonical answer
    out = reduced_ideal(ring, polys_to_vecs(&out));
    Ok(out)
}

/// Hilbert series of `S^r / M` where `M` is the monomial submodule with the
/// given generators per component and component degrees `degrees`.
pub fn hilbert_series(nvars: usize, degrees: &[i64], leads: &[Vec<Monomial>]) -> HilbertSeries {
    let mut num = Laurent::zero();
    for (c, gens) in leads.iter().enumerate() {
        num = num.add(&monomial_ideal_numerator(gens).shift(degrees[c]));
    }
    HilbertSeries::new(num, nvars)
}

/// Hilbert series of `S^r / span(gens)` (standard grading).
pub fn hilbert_series_of_quotient(ring: &RingPresentation, degrees: &[i64], rels: &[ModVec]) -> HilbertSeries {
    let sp = ring.space(degrees.to_vec());
    let mut all = rels.to_vec();
    all.extend(ring.ideal_vectors(0, degrees.len()));
    let b = Basis::compute(sp, all);
    hilbert_series(ring.nvars(), degrees, &b.lead_monomials())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn ring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(Field::Rationals, names, MonomialOrder::Grevlex).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> Polynomial {
        Polynomial::parse(r, s).unwrap()
    }

    fn fe(r: &Arc<PolyRing>, cs: &[&str]) -> FreeElement {
        FreeElement::new(r, cs.iter().map(|c| p(r, c)).collect()).unwrap()
    }

    #[test]
    fn groebner_examples() {
        let s3 = ring(&["x", "y", "z"]);
        let g = groebner(&s3, &[fe(&s3, &["x*y - z^2"])], 1).unwrap();
        assert_eq!(g.elements(), &[fe(&s3, &["x*y - z^2"])]);
        let s2 = ring(&["x", "y"]);
        let g = groebner(&s2, &[fe(&s2, &["x^2"]), fe(&s2, &["x*y"])], 1).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g.s_pairs_reduce_to_zero());
        assert!(groebner(&s2, &[], 1).unwrap().is_empty());
        assert!(groebner(&s2, &[fe(&s2, &["x", "y"])], 1).is_err());
    }

    #[test]
    fn normal_form_examples() {
        let s3 = ring(&["x", "y", "z"]);
        let g = groebner(&s3, &[fe(&s3, &["x*y - z^2"])], 1).unwrap();
        assert_eq!(normal_form(&fe(&s3, &["x^2*y^2"]), &g).unwrap(), fe(&s3, &["z^4"]));
        assert_eq!(normal_form(&fe(&s3, &["z^3"]), &g).unwrap(), fe(&s3, &["z^3"]));
    }

    #[test]
    fn syzygy_examples() {
        let s2 = ring(&["x", "y"]);
        let k = syzygies(&s2, &[fe(&s2, &["x"]), fe(&s2, &["y"])]).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(v.coords()[0].mul(&p(&s2, "x")).unwrap().add(&v.coords()[1].mul(&p(&s2, "y")).unwrap()).unwrap().is_zero());
        assert!(syzygies(&s2, &[fe(&s2, &["x"])]).unwrap().is_empty());

        let s3 = ring(&["x", "y", "z"]);
        let k = syzygies(&s3, &[fe(&s3, &["x*y - z^2"]), fe(&s3, &["x^2*y - x*z^2"])]).unwrap();
        let target = fe(&s3, &["x", "-1"]);
        let g = groebner(&s3, &k, 2).unwrap();
        assert!(normal_form(&target, &g).unwrap().is_zero());
    }

    #[test]
    fn quotient_saturation_elimination() {
        let s2 = ring(&["x", "y"]);
        assert_eq!(ideal_quotient(&s2, &[p(&s2, "x^2")], &[p(&s2, "x")]).unwrap(), vec![p(&s2, "x")]);
        let s3 = ring(&["x", "y", "z"]);
        assert_eq!(
            ideal_quotient(&s3, &[p(&s3, "x^2*y - x*z^2")], &[p(&s3, "x")]).unwrap(),
            vec![p(&s3, "x*y - z^2")]
        );
        assert_eq!(
            ideal_quotient(&s2, &[p(&s2, "x^2")], &[p(&s2, "1")]).unwrap(),
            vec![p(&s2, "x^2")]
        );
        let sat = saturate(&s2, &[fe(&s2, &["x^2*y"])], 1, &p(&s2, "x")).unwrap();
        assert_eq!(sat, vec![fe(&s2, &["y"])]);
        let sat = saturate(&s2, &[fe(&s2, &["x"])], 1, &p(&s2, "y")).unwrap();
        assert_eq!(sat, vec![fe(&s2, &["x"])]);
    }

    #[test]
    fn elimination_gives_veronese_relations() {
        let r = PolyRing::weighted(
            Field::Rationals,
            &["x", "y", "a", "b", "c"],
            &[1, 1, 2, 2, 2],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let e = eliminate(&r, &[p(&r, "a - x^2"), p(&r, "b - x*y"), p(&r, "c - y^2")], &[2, 3, 4]).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0], p(&r, "b^2 - a*c"));
    }
}
