//! Finitely generated graded modules over `R = S/I`, presented as cokernels
//! `F / U` of a graded free module `F = ⊕ S(-d_i)` modulo relation columns
//! (the quotient ideal times `F` is always implicit).

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::engine::{Basis, Space};
use crate::error::{Error, Result};
use crate::groebner::{colon_by, hilbert_series as monomial_series, kernel_raw, minimal_subset, Augmented};
use crate::hilbert::HilbertSeries;
use crate::matrix::{self, Matrix};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::vector::{ModVec, Term};

const MINOR_CAP: u128 = 200_000;

#[derive(Clone)]
pub struct ModulePresentation {
    ring: Ring,
    degrees: Vec<i64>,
    relations: Vec<ModVec>,
    gb: OnceLock<Arc<Basis>>,
}

impl fmt::Debug for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ModulePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "coker ")?;
        let m = self.relation_matrix();
        if self.relations.is_empty() {
            return write!(f, "0 -> R^{}", self.ngens());
        }
        let rows: Vec<String> = m
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(|p| p.to_string()).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
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

impl ModulePresentation {
    /// Relation columns are reduced modulo the quotient ideal; zero columns
    /// are dropped.
    pub(crate) fn from_parts(ring: &Ring, degrees: Vec<i64>, relations: Vec<ModVec>) -> Self {
        let sp = ring.space(degrees.clone());
        let relations = if ring.is_polynomial_ring() {
            relations
                .into_iter()
                .map(|mut v| {
                    v.resort(&sp.order);
                    v
                })
                .filter(|v| !v.is_zero())
                .collect()
        } else {
            let ib = Basis::new(sp, ring.ideal_vectors(0, degrees.len()));
            relations
                .iter()
                .map(|v| ib.normal_form(v))
                .filter(|v| !v.is_zero())
                .collect()
        };
        ModulePresentation {
            ring: ring.clone(),
            degrees,
            relations,
            gb: OnceLock::new(),
        }
    }

    /// `coker` of the given relation columns, each of length `degrees.len()`.
    pub fn new(ring: &Ring, degrees: Vec<i64>, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let amb = ring.ambient();
        let mut vecs = Vec::with_capacity(columns.len());
        for c in &columns {
            if c.len() != degrees.len() {
                return Err(Error::RankMismatch {
                    expected: degrees.len(),
                    found: c.len(),
                });
            }
            if c.iter().any(|p| p.ring() != amb) {
                return Err(Error::RingMismatch);
            }
            let v = matrix::vec_from_coords(amb, c);
            if !v.is_homogeneous(amb.weights(), &degrees) {
                let s: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                return Err(Error::NonHomogeneous(format!("({})", s.join(", "))));
            }
            vecs.push(v);
        }
        Ok(Self::from_parts(ring, degrees, vecs))
    }

    /// `coker` of a row-major relation matrix.
    pub fn from_matrix(ring: &Ring, degrees: Vec<i64>, m: &Matrix) -> Result<Self> {
        Self::new(ring, degrees, matrix::transpose(m))
    }

    pub fn free(ring: &Ring, degrees: Vec<i64>) -> Self {
        Self::from_parts(ring, degrees, Vec::new())
    }

    pub fn free_rank(ring: &Ring, n: usize) -> Self {
        Self::free(ring, vec![0; n])
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::free(ring, Vec::new())
    }

    /// `R / J`.
    pub fn cyclic(ring: &Ring, ideal: &[Polynomial]) -> Result<Self> {
        Self::new(ring, vec![0], ideal.iter().map(|p| vec![p.clone()]).collect())
    }

    /// The ideal `J` of `R` as a module.
    pub fn ideal(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        Self::submodule(ring, vec![0], gens.iter().map(|p| vec![p.clone()]).collect())
    }

    /// The submodule of `⊕ R(-d_i)` generated by the given vectors.
    pub fn submodule(ring: &Ring, degrees: Vec<i64>, gens: Vec<Vec<Polynomial>>) -> Result<Self> {
        let amb = ring.ambient();
        let mut vecs = Vec::new();
        for g in &gens {
            if g.len() != degrees.len() {
                return Err(Error::RankMismatch {
                    expected: degrees.len(),
                    found: g.len(),
                });
            }
            let v = matrix::vec_from_coords(amb, g);
            if !v.is_homogeneous(amb.weights(), &degrees) {
                return Err(Error::NonHomogeneous(format!("{g:?}")));
            }
            vecs.push(v);
        }
        Ok(subquotient(ring, &degrees, &vecs, &[]).0)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ngens(&self) -> usize {
        self.degrees.len()
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    pub(crate) fn relation_vecs(&self) -> &[ModVec] {
        &self.relations
    }

    /// Rows indexed by generators, columns by relations.
    pub fn relation_matrix(&self) -> Matrix {
        matrix::from_columns(self.ring.ambient(), self.ngens(), &self.relations)
    }

    pub fn relation_degrees(&self) -> Vec<i64> {
        let sp = self.space();
        self.relations.iter().map(|v| sp.degree_of(v).unwrap()).collect()
    }

    pub(crate) fn space(&self) -> Space {
        self.ring.space(self.degrees.clone())
    }

    /// Relations together with the quotient-ideal multiples.
    pub(crate) fn submodule_gens(&self) -> Vec<ModVec> {
        let mut v = self.relations.clone();
        v.extend(self.ring.ideal_vectors(0, self.ngens()));
        v
    }

    pub(crate) fn gb(&self) -> &Basis {
        self.gb
            .get_or_init(|| Arc::new(Basis::compute(self.space(), self.submodule_gens())))
    }

    /// Normal form of a vector of `F` modulo the relations.
    pub(crate) fn reduce(&self, v: &ModVec) -> ModVec {
        self.gb().normal_form(v)
    }

    pub fn shift(&self, d: i64) -> Self {
        Self::from_parts(
            &self.ring,
            self.degrees.iter().map(|x| x + d).collect(),
            self.relations.clone(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.gb().lead_monomials().iter().all(|ms| ms.iter().any(|m| m.is_one()))
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        monomial_series(self.ring.nvars(), &self.degrees, &self.gb().lead_monomials())
    }

    pub fn hilbert_function(&self, lo: i64, hi: i64) -> Vec<i64> {
        let s = self.hilbert_series();
        (lo..=hi).map(|d| s.value(d)).collect()
    }

    /// Krull dimension; `None` stands for the zero module.
    pub fn dim(&self) -> Option<usize> {
        self.hilbert_series().dimension()
    }

    pub fn length(&self) -> Result<i64> {
        let s = self.hilbert_series();
        match s.dimension() {
            None => Ok(0),
            Some(0) => Ok(s.multiplicity()),
            Some(_) => Err(Error::LengthOfPositiveDimensional),
        }
    }

    pub fn multiplicity(&self) -> i64 {
        self.hilbert_series().multiplicity()
    }

    /// Presentation with no unit entries and a minimal set of relations,
    /// together with mutually inverse maps.
    pub fn minimal_presentation(&self) -> MinimalPresentation {
        let amb = self.ring.ambient();
        let ord = amb.module_order();
        let n = self.ngens();
        let one = self.ring.field().one();
        let mut cols = self.relations.clone();
        let mut exprs: Vec<ModVec> = (0..n).map(|i| ModVec::unit(i, amb.nvars(), one.clone())).collect();
        let mut removed = vec![false; n];
        loop {
            let mut pivot = None;
            'find: for (k, c) in cols.iter().enumerate() {
                let mut best: Option<(usize, &Term)> = None;
                for t in &c.terms {
                    if t.mono.is_one() && !removed[t.comp] && best.map_or(true, |(b, _)| t.comp < b) {
                        best = Some((t.comp, t));
                    }
                }
                if let Some((i, t)) = best {
                    pivot = Some((k, i, t.coef.clone()));
                    break 'find;
                }
            }
            let Some((k, i, u)) = pivot else { break };
            let c = cols.remove(k);
            let eliminate = |v: &ModVec| -> ModVec {
                let hits: Vec<Term> = v.component(i).cloned().collect();
                let mut v = v.clone();
                for t in hits {
                    v = v.axpy(&-&t.coef.div(&u), &t.mono, &c, &ord);
                }
                v
            };
            for col in cols.iter_mut() {
                *col = eliminate(col);
            }
            for e in exprs.iter_mut() {
                *e = eliminate(e);
            }
            removed[i] = true;
        }
        let kept: Vec<usize> = (0..n).filter(|&i| !removed[i]).collect();
        let mut newidx = vec![None; n];
        for (j, &i) in kept.iter().enumerate() {
            newidx[i] = Some(j);
        }
        let degrees: Vec<i64> = kept.iter().map(|&i| self.degrees[i]).collect();
        let cols: Vec<ModVec> = cols.iter().map(|v| v.map_comps(|c| newidx[c], &ord)).collect();
        let m = Self::from_parts(&self.ring, degrees, cols).minimize_relations();
        let exprs: Vec<ModVec> = exprs.iter().map(|v| v.map_comps(|c| newidx[c], &ord)).collect();
        let target = Arc::new(m);
        let source = Arc::new(self.clone());
        let back: Vec<ModVec> = kept.iter().map(|&i| ModVec::unit(i, amb.nvars(), one.clone())).collect();
        MinimalPresentation {
            to: ModuleMap::raw(source.clone(), target.clone(), exprs, 0),
            from: ModuleMap::raw(target.clone(), source, back, 0),
            module: target,
        }
    }

    /// Drop relations that are consequences of the others.
    pub(crate) fn minimize_relations(self) -> Self {
        if self.relations.is_empty() {
            return self;
        }
        let keep = minimal_subset(
            &self.space(),
            &self.relations,
            &self.ring.ideal_vectors(0, self.ngens()),
        );
        let relations = keep.into_iter().map(|i| self.relations[i].clone()).collect();
        ModulePresentation {
            ring: self.ring,
            degrees: self.degrees,
            relations,
            gb: OnceLock::new(),
        }
    }

    pub fn minimize(&self) -> Self {
        Arc::unwrap_or_clone(self.minimal_presentation().module)
    }

    pub fn mu(&self) -> usize {
        self.minimal_presentation().module.ngens()
    }

    pub fn is_free(&self) -> bool {
        self.minimal_presentation().module.num_relations() == 0
    }

    pub fn direct_sum(&self, o: &Self) -> Result<Self> {
        if !self.ring.same_ring(&o.ring) {
            return Err(Error::RingMismatch);
        }
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&o.degrees);
        let mut rels = self.relations.clone();
        rels.extend(o.relations.iter().map(|v| shift_comps(v, self.ngens())));
        Ok(Self::from_parts(&self.ring, degrees, rels))
    }

    /// Generators of `(0 :_R M)`, reduced modulo the quotient ideal.
    pub fn annihilator(&self) -> Vec<Polynomial> {
        let amb = self.ring.ambient();
        let n = self.ngens();
        if n == 0 {
            return vec![Polynomial::one(amb)];
        }
        // r -> (r e_0, ..., r e_{n-1}) in n copies of F
        let mut degs = Vec::with_capacity(n * n);
        for i in 0..n {
            for p in 0..n {
                degs.push(self.degrees[p] - self.degrees[i]);
            }
        }
        let target = self.ring.space(degs);
        let one = self.ring.field().one();
        let col = ModVec::from_terms(
            (0..n)
                .map(|i| Term {
                    comp: i * n + i,
                    mono: crate::monomial::Monomial::one(amb.nvars()),
                    coef: one.clone(),
                })
                .collect(),
            &target.order,
        );
        let mut rels = Vec::new();
        for i in 0..n {
            for v in &self.relations {
                rels.push(shift_comps(v, i * n));
            }
        }
        let gens = kernel_raw(
            &target,
            &[col],
            &[0],
            &rels,
            &self.ring.ideal_vectors(0, n * n),
            &self.ring.ideal_vectors(0, 1),
        );
        minimal_ideal_gens(&self.ring, gens)
    }

    /// Ideal generated by the `(ngens - r)`-minors of the relation matrix.
    pub fn fitting_ideal(&self, r: usize) -> Result<Vec<Polynomial>> {
        let amb = self.ring.ambient();
        let n = self.ngens();
        if r >= n {
            return Ok(vec![Polynomial::one(amb)]);
        }
        let k = n - r;
        let m = self.relation_matrix();
        let ms = matrix::minors(amb, &m, k, MINOR_CAP)?;
        Ok(minimal_ideal_gens(
            &self.ring,
            ms.iter().map(|p| p.as_vec().clone()).collect(),
        ))
    }

    /// Rank over a domain: multiplicity ratio in top dimension.
    pub fn rank(&self) -> Result<usize> {
        if !self.ring.is_domain() {
            return Err(Error::NotDomain);
        }
        let sm = self.hilbert_series();
        let sr = self.ring.hilbert_series();
        match sm.dimension() {
            Some(d) if d == sr.denom_power => {
                let (a, b) = (sm.multiplicity(), sr.multiplicity());
                if a % b != 0 {
                    return Err(Error::NonConstantRank);
                }
                Ok((a / b) as usize)
            }
            Some(d) if d > sr.denom_power => Err(Error::NonConstantRank),
            _ => Ok(0),
        }
    }

    /// Torsion submodule and its inclusion, over a domain.
    pub fn torsion(&self) -> Result<(ModulePresentation, ModuleMap)> {
        if !self.ring.is_domain() {
            return Err(Error::NotDomain);
        }
        let sat = self.torsion_vectors()?;
        let (t, images) = subquotient(&self.ring, &self.degrees, &sat, &self.relations);
        let t = Arc::new(t);
        let inc = ModuleMap::raw(t.clone(), Arc::new(self.clone()), images, 0);
        Ok((Arc::unwrap_or_clone(t), inc))
    }

    /// Generators of the saturation of the relation module by a nonzero
    /// element of the top Fitting ideal; localizing at it makes M free.
    fn torsion_vectors(&self) -> Result<Vec<ModVec>> {
        let min = self.minimize();
        let r = min.rank()?;
        let n = min.ngens();
        if r >= n {
            return Ok(Vec::new());
        }
        let f = first_nonzero_minor(&min, n - r)?.ok_or(Error::NonConstantRank)?;
        let sp = self.space();
        let iv = self.ring.ideal_vectors(0, self.ngens());
        let mut current = Basis::compute(sp.clone(), self.submodule_gens());
        loop {
            let next = colon_by(&sp, &current.elems, &f, &iv);
            let next = Basis::compute(sp.clone(), next);
            if next.elems == current.elems {
                break;
            }
            current = next;
        }
        Ok(current.elems)
    }

    /// `M / torsion(M)`.
    pub fn torsion_free_quotient(&self) -> Result<ModulePresentation> {
        if !self.ring.is_domain() {
            return Err(Error::NotDomain);
        }
        let mut rels = self.relations.clone();
        rels.extend(self.torsion_vectors()?);
        Ok(Self::from_parts(&self.ring, self.degrees.clone(), rels).minimize())
    }

    pub fn is_torsionfree(&self) -> Result<bool> {
        Ok(self.torsion()?.0.is_zero())
    }

    pub fn is_reflexive(&self) -> Result<bool> {
        let dd = double_dual_map(self)?;
        Ok(dd.is_injective() && dd.is_surjective())
    }

    /// `M_p` free for every non-maximal homogeneous prime `p`.
    pub fn is_locally_free_on_punctured(&self) -> Result<bool> {
        if !self.ring.is_domain() {
            return Err(Error::NotDomain);
        }
        let (t, _) = self.torsion()?;
        let m = if t.is_zero() {
            self.minimize()
        } else {
            if t.dim().unwrap_or(0) > 0 {
                return Ok(false);
            }
            self.torsion_free_quotient()?
        };
        let r = m.rank()?;
        let fitt = m.fitting_ideal(r)?;
        let q = ModulePresentation::cyclic(&self.ring, &fitt)?;
        Ok(q.dim().unwrap_or(0) == 0)
    }
}

fn first_nonzero_minor(m: &ModulePresentation, k: usize) -> Result<Option<Polynomial>> {
    let ring = m.ring();
    let amb = ring.ambient();
    let mat = m.relation_matrix();
    for p in matrix::minors(amb, &mat, k, MINOR_CAP)? {
        let red = ring.reduce(&p);
        if !red.is_zero() {
            return Ok(Some(red));
        }
    }
    Ok(None)
}

/// Minimal generators modulo the quotient ideal of an ideal given by
/// vectors on component 0.
pub(crate) fn minimal_ideal_gens(ring: &Ring, gens: Vec<ModVec>) -> Vec<Polynomial> {
    let sp = ring.space(vec![0]);
    let gens: Vec<ModVec> = gens
        .into_iter()
        .map(|v| ring.reduce(&Polynomial::from_vec(ring.ambient(), v)).as_vec().clone())
        .filter(|v| !v.is_zero())
        .collect();
    let keep = minimal_subset(&sp, &gens, &ring.ideal_vectors(0, 1));
    keep.into_iter()
        .map(|i| Polynomial::from_vec(ring.ambient(), gens[i].clone()))
        .collect()
}

/// `(span(gens) + span(rels)) / span(rels)` inside `F = ⊕ S(-d_i)` (modulo
/// the quotient ideal). Returns the module and the vectors of `F` its
/// generators map to; these are a subset of `gens`.
pub(crate) fn subquotient(
    ring: &Ring,
    degrees: &[i64],
    gens: &[ModVec],
    rels: &[ModVec],
) -> (ModulePresentation, Vec<ModVec>) {
    let sp = ring.space(degrees.to_vec());
    let mut extra = rels.to_vec();
    extra.extend(ring.ideal_vectors(0, degrees.len()));
    let keep = minimal_subset(&sp, gens, &extra);
    let g: Vec<ModVec> = keep.iter().map(|&i| gens[i].clone()).collect();
    let gdeg: Vec<i64> = g.iter().map(|v| sp.degree_of(v).unwrap()).collect();
    let rel = kernel_raw(&sp, &g, &gdeg, &extra, &[], &ring.ideal_vectors(0, g.len()));
    let m = ModulePresentation::from_parts(ring, gdeg, rel).minimize_relations();
    (m, g)
}

/// Result of [`ModulePresentation::minimal_presentation`].
#[derive(Clone, Debug)]
pub struct MinimalPresentation {
    pub module: Arc<ModulePresentation>,
    pub to: ModuleMap,
    pub from: ModuleMap,
}

/// A graded homomorphism, stored as the images of the source generators in
/// the target's free cover.
#[derive(Clone)]
pub struct ModuleMap {
    source: Arc<ModulePresentation>,
    target: Arc<ModulePresentation>,
    images: Vec<ModVec>,
    degree: i64,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.matrix();
        let rows: Vec<String> = m
            .iter()
            .map(|r| {
                let e: Vec<String> = r.iter().map(|p| p.to_string()).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        write!(f, "map [{}] (degree {})", rows.join(", "), self.degree)
    }
}

impl ModuleMap {
    pub(crate) fn raw(
        source: Arc<ModulePresentation>,
        target: Arc<ModulePresentation>,
        images: Vec<ModVec>,
        degree: i64,
    ) -> ModuleMap {
        ModuleMap {
            source,
            target,
            images,
            degree,
        }
    }

    /// Map given by a row-major matrix (rows: target generators, columns:
    /// source generators). Checks homogeneity and well-definedness.
    pub fn new(source: &ModulePresentation, target: &ModulePresentation, m: &Matrix) -> Result<ModuleMap> {
        let cols = matrix::transpose(m);
        let amb = target.ring().ambient();
        if cols.len() != source.ngens() || (source.ngens() > 0 && m.len() != target.ngens()) {
            return Err(Error::IllDefinedMap);
        }
        let images: Vec<ModVec> = cols.iter().map(|c| matrix::vec_from_coords(amb, c)).collect();
        ModuleMap::from_images(Arc::new(source.clone()), Arc::new(target.clone()), images)
    }

    pub(crate) fn from_images(
        source: Arc<ModulePresentation>,
        target: Arc<ModulePresentation>,
        images: Vec<ModVec>,
    ) -> Result<ModuleMap> {
        if !source.ring().same_ring(target.ring()) {
            return Err(Error::RingMismatch);
        }
        let sp = target.space();
        let w = target.ring().ambient().weights().clone();
        let mut degree = None;
        for (j, v) in images.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if v.max_comp().unwrap() >= target.ngens() || !v.is_homogeneous(&w, &sp.comp_degrees) {
                return Err(Error::IllDefinedMap);
            }
            let d = sp.degree_of(v).unwrap() - source.degrees()[j];
            if *degree.get_or_insert(d) != d {
                return Err(Error::IllDefinedMap);
            }
        }
        let map = ModuleMap {
            source,
            target,
            images,
            degree: degree.unwrap_or(0),
        };
        for r in map.source.relation_vecs() {
            if !map.target.reduce(&map.apply_raw(r)).is_zero() {
                return Err(Error::IllDefinedMap);
            }
        }
        Ok(map)
    }

    pub fn identity(m: &ModulePresentation) -> ModuleMap {
        let amb = m.ring().ambient();
        let one = m.ring().field().one();
        let a = Arc::new(m.clone());
        ModuleMap::raw(
            a.clone(),
            a,
            (0..m.ngens()).map(|i| ModVec::unit(i, amb.nvars(), one.clone())).collect(),
            0,
        )
    }

    pub fn source(&self) -> &ModulePresentation {
        &self.source
    }

    pub fn target(&self) -> &ModulePresentation {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub(crate) fn images(&self) -> &[ModVec] {
        &self.images
    }

    /// Row-major matrix (target generators x source generators).
    pub fn matrix(&self) -> Matrix {
        matrix::from_columns(self.source.ring().ambient(), self.target.ngens(), &self.images)
    }

    /// Image of a vector of the source's free cover, unreduced.
    pub(crate) fn apply_raw(&self, v: &ModVec) -> ModVec {
        let ord = self.target.ring().ambient().module_order();
        let mut acc = ModVec::zero();
        for t in &v.terms {
            acc = acc.axpy(&t.coef, &t.mono, &self.images[t.comp], &ord);
        }
        acc
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target.ngens() != other.source.ngens() {
            return Err(Error::RankMismatch {
                expected: self.target.ngens(),
                found: other.source.ngens(),
            });
        }
        let images = self
            .images
            .iter()
            .map(|v| other.target.reduce(&other.apply_raw(v)))
            .collect();
        Ok(ModuleMap::raw(
            self.source.clone(),
            other.target.clone(),
            images,
            self.degree + other.degree,
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| self.target.reduce(v).is_zero())
    }

    /// Equality as maps (differences vanish modulo target relations).
    pub fn equals(&self, o: &ModuleMap) -> bool {
        let ord = self.target.ring().ambient().module_order();
        self.images.len() == o.images.len()
            && self
                .images
                .iter()
                .zip(&o.images)
                .all(|(a, b)| self.target.reduce(&a.sub(b, &ord)).is_zero())
    }

    fn shifted_source_degrees(&self) -> Vec<i64> {
        self.source.degrees().iter().map(|d| d + self.degree).collect()
    }

    /// Generators of the preimage of the target relations, in the source's
    /// free cover.
    pub(crate) fn kernel_vectors(&self) -> Vec<ModVec> {
        let ring = self.source.ring();
        let tsp = self.target.space();
        kernel_raw(
            &tsp,
            &self.images,
            &self.shifted_source_degrees(),
            &self.target.submodule_gens(),
            &[],
            &ring.ideal_vectors(0, self.source.ngens()),
        )
    }

    pub fn kernel(&self) -> (ModulePresentation, ModuleMap) {
        let k = self.kernel_vectors();
        let (m, images) = subquotient(self.source.ring(), self.source.degrees(), &k, self.source.relation_vecs());
        let m = Arc::new(m);
        let inc = ModuleMap::raw(m.clone(), self.source.clone(), images, 0);
        (Arc::unwrap_or_clone(m), inc)
    }

    pub fn image(&self) -> (ModulePresentation, ModuleMap) {
        let (m, images) = subquotient(
            self.target.ring(),
            self.target.degrees(),
            &self.images,
            self.target.relation_vecs(),
        );
        let m = Arc::new(m);
        let inc = ModuleMap::raw(m.clone(), self.target.clone(), images, 0);
        (Arc::unwrap_or_clone(m), inc)
    }

    pub fn cokernel(&self) -> (ModulePresentation, ModuleMap) {
        let mut rels = self.target.relation_vecs().to_vec();
        rels.extend(self.images.iter().cloned());
        let c = Arc::new(ModulePresentation::from_parts(
            self.target.ring(),
            self.target.degrees().to_vec(),
            rels,
        ));
        let amb = self.target.ring().ambient();
        let one = self.target.ring().field().one();
        let proj = ModuleMap::raw(
            self.target.clone(),
            c.clone(),
            (0..c.ngens()).map(|i| ModVec::unit(i, amb.nvars(), one.clone())).collect(),
            0,
        );
        (Arc::unwrap_or_clone(c), proj)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// Express a vector of the target's free cover through the images,
    /// modulo target relations; `None` when it is not in the image.
    pub(crate) fn lift(&self, v: &ModVec) -> Option<ModVec> {
        let aug = Augmented::new(
            &self.target.space(),
            &self.images,
            &self.shifted_source_degrees(),
            &self.target.submodule_gens(),
            &self.source.ring().ideal_vectors(0, self.source.ngens()),
        );
        aug.lift(v)
    }
}

/// `Hom(M, N)` with one explicit map per generator.
#[derive(Clone, Debug)]
pub struct Hom {
    pub module: ModulePresentation,
    pub witnesses: Vec<ModuleMap>,
    source: Arc<ModulePresentation>,
    target: Arc<ModulePresentation>,
    mp: MinimalPresentation,
    np: MinimalPresentation,
    cover_degrees: Vec<i64>,
    gens: Vec<ModVec>,
    rels: Vec<ModVec>,
}

impl Hom {
    /// The map corresponding to an element of the Hom module's free cover.
    pub fn element_map(&self, v: &ModVec) -> ModuleMap {
        let ord = self.target.ring().ambient().module_order();
        let mut images = vec![ModVec::zero(); self.source.ngens()];
        for t in &v.terms {
            let w = &self.witnesses[t.comp];
            for (j, img) in w.images.iter().enumerate() {
                images[j] = images[j].axpy(&t.coef, &t.mono, img, &ord);
            }
        }
        let d = self.module.space().degree_of(v).unwrap_or(0);
        ModuleMap::raw(self.source.clone(), self.target.clone(), images, d)
    }

    /// Coordinates of a map `M -> N` in terms of the Hom generators.
    pub fn element_of(&self, map: &ModuleMap) -> Option<ModVec> {
        let core = self.mp.from.then(map).ok()?.then(&self.np.to).ok()?;
        let n0 = self.np.module.ngens();
        let ord = self.target.ring().ambient().module_order();
        let terms = core
            .images
            .iter()
            .enumerate()
            .flat_map(|(i, v)| shift_comps(v, i * n0).terms)
            .collect();
        let v = ModVec::from_terms(terms, &ord);
        let ring = self.target.ring();
        let mut rels = self.rels.clone();
        rels.extend(ring.ideal_vectors(0, self.cover_degrees.len()));
        let aug = Augmented::new(
            &ring.space(self.cover_degrees.clone()),
            &self.gens,
            self.module.degrees(),
            &rels,
            &ring.ideal_vectors(0, self.gens.len()),
        );
        aug.lift(&v)
    }

    pub fn source(&self) -> &ModulePresentation {
        &self.source
    }

    pub fn target(&self) -> &ModulePresentation {
        &self.target
    }
}

pub fn hom(m: &ModulePresentation, n: &ModulePresentation) -> Result<Hom> {
    if !m.ring().same_ring(n.ring()) {
        return Err(Error::RingMismatch);
    }
    let ring = m.ring().clone();
    let mp = m.minimal_presentation();
    let np = n.minimal_presentation();
    let (mm, nn) = (&*mp.module, &*np.module);
    let (m0, n0) = (mm.ngens(), nn.ngens());
    let a = mm.degrees();
    let b = nn.degrees();
    let mut src_deg = Vec::with_capacity(m0 * n0);
    for &ai in a {
        for &bp in b {
            src_deg.push(bp - ai);
        }
    }
    let src_sp = ring.space(src_deg.clone());
    let block = |v: &ModVec, blk: usize| shift_comps(v, blk * n0);
    let kernel: Vec<ModVec> = if mm.num_relations() == 0 {
        let one = ring.field().one();
        (0..m0 * n0)
            .map(|c| ModVec::unit(c, ring.nvars(), one.clone()))
            .collect()
    } else {
        let cdeg = mm.relation_degrees();
        let m1 = cdeg.len();
        let mut tdeg = Vec::with_capacity(m1 * n0);
        for &ck in &cdeg {
            for &bp in b {
                tdeg.push(bp - ck);
            }
        }
        let tsp = ring.space(tdeg);
        let mut cols = Vec::with_capacity(m0 * n0);
        for i in 0..m0 {
            for p in 0..n0 {
                let mut terms = Vec::new();
                for (k, ak) in mm.relation_vecs().iter().enumerate() {
                    for t in ak.component(i) {
                        terms.push(Term {
                            comp: k * n0 + p,
                            mono: t.mono.clone(),
                            coef: t.coef.clone(),
                        });
                    }
                }
                cols.push(ModVec::from_terms(terms, &tsp.order));
            }
        }
        let mut rels = Vec::new();
        for k in 0..m1 {
            for v in nn.relation_vecs() {
                rels.push(block(v, k));
            }
        }
        let mut src_extra = Vec::new();
        for i in 0..m0 {
            for v in nn.relation_vecs() {
                src_extra.push(block(v, i));
            }
        }
        src_extra.extend(ring.ideal_vectors(0, m0 * n0));
        kernel_raw(&tsp, &cols, &src_deg, &rels, &ring.ideal_vectors(0, m1 * n0), &src_extra)
    };
    let mut hrels = Vec::new();
    for i in 0..m0 {
        for v in nn.relation_vecs() {
            hrels.push(block(v, i));
        }
    }
    let (module, gens) = subquotient(&ring, &src_deg, &kernel, &hrels);
    let source = Arc::new(m.clone());
    let target = Arc::new(n.clone());
    let witnesses = gens
        .iter()
        .map(|g| {
            let images: Vec<ModVec> = (0..m0)
                .map(|i| g.map_comps(|c| (c / n0 == i).then_some(c % n0), &ring.ambient().module_order()))
                .collect();
            let core = ModuleMap::raw(mp.module.clone(), np.module.clone(), images, 0);
            let mut w = mp.to.then(&core).unwrap().then(&np.from).unwrap();
            w.degree = src_sp.degree_of(g).unwrap_or(0);
            w.source = source.clone();
            w.target = target.clone();
            w
        })
        .collect();
    Ok(Hom {
        module,
        witnesses,
        source,
        target,
        mp,
        np,
        cover_degrees: src_deg,
        gens,
        rels: hrels,
    })
}

pub fn tensor(m: &ModulePresentation, n: &ModulePresentation) -> Result<ModulePresentation> {
    if !m.ring().same_ring(n.ring()) {
        return Err(Error::RingMismatch);
    }
    let m = m.minimize();
    let n = n.minimize();
    let (m0, n0) = (m.ngens(), n.ngens());
    let mut degrees = Vec::with_capacity(m0 * n0);
    for &a in m.degrees() {
        for &b in n.degrees() {
            degrees.push(a + b);
        }
    }
    let ord = m.ring().ambient().module_order();
    let mut rels = Vec::new();
    for ak in m.relation_vecs() {
        for p in 0..n0 {
            rels.push(ak.map_comps(|i| Some(i * n0 + p), &ord));
        }
    }
    for i in 0..m0 {
        for bl in n.relation_vecs() {
            rels.push(shift_comps(bl, i * n0));
        }
    }
    Ok(ModulePresentation::from_parts(m.ring(), degrees, rels).minimize())
}

/// `M* = Hom(M, R)`.
pub fn dual(m: &ModulePresentation) -> Result<Hom> {
    hom(m, &ModulePresentation::free_rank(m.ring(), 1))
}

/// The natural map `M -> M**`.
pub fn double_dual_map(m: &ModulePresentation) -> Result<ModuleMap> {
    let ring = m.ring();
    let amb = ring.ambient();
    let d1 = dual(m)?;
    let d2 = dual(&d1.module)?;
    let s = d1.module.ngens();
    let src = Arc::new(m.clone());
    let tgt = Arc::new(d2.module.clone());
    if s == 0 || d2.module.ngens() == 0 {
        let images = vec![ModVec::zero(); m.ngens()];
        return Ok(ModuleMap::raw(src, tgt, images, 0));
    }
    // vectors of R^s representing the generators of M**
    let dual_degrees: Vec<i64> = d1.module.degrees().iter().map(|d| -d).collect();
    let h: Vec<ModVec> = d2
        .witnesses
        .iter()
        .map(|w| {
            let terms = (0..s).flat_map(|t| shift_comps(&w.images[t], t).terms).collect();
            ModVec::from_terms(terms, &amb.module_order())
        })
        .collect();
    let sp = ring.space(dual_degrees);
    let aug = Augmented::new(
        &sp,
        &h,
        d2.module.degrees(),
        &ring.ideal_vectors(0, s),
        &ring.ideal_vectors(0, h.len()),
    );
    let mut images = Vec::with_capacity(m.ngens());
    for i in 0..m.ngens() {
        let terms = (0..s)
            .flat_map(|t| shift_comps(&d1.witnesses[t].images[i], t).terms)
            .collect();
        let ev = ModVec::from_terms(terms, &amb.module_order());
        let c = aug.lift(&ev).ok_or_else(|| Error::Other("evaluation not in double dual".into()))?;
        images.push(c);
    }
    ModuleMap::from_images(src, tgt, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::ring::{RingFlags, RingPresentation};
    use crate::scalar::Field;

    pub(crate) fn rq() -> Ring {
        RingPresentation::parse(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex, &["x*y - z^2"])
            .unwrap()
            .with_flags(RingFlags {
                domain: Some(true),
                ..RingFlags::default()
            })
    }

    fn rxy() -> Ring {
        RingPresentation::parse(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex, &["x*y"]).unwrap()
    }

    fn s2() -> Ring {
        RingPresentation::parse(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex, &[]).unwrap()
    }

    fn iq(r: &Ring) -> ModulePresentation {
        ModulePresentation::ideal(r, &[r.poly("x").unwrap(), r.poly("y").unwrap()]).unwrap()
    }

    #[test]
    fn minimal_presentation_prunes_units() {
        let r = s2();
        let p = |t: &str| r.poly(t).unwrap();
        let m = ModulePresentation::from_matrix(&r, vec![0, 0], &vec![vec![p("1"), p("x")], vec![p("0"), p("y")]])
            .unwrap();
        let mp = m.minimal_presentation();
        assert_eq!(mp.module.ngens(), 1);
        assert_eq!(mp.module.num_relations(), 1);
        assert_eq!(mp.module.relation_matrix()[0][0], p("y"));
        assert!(mp.to.then(&mp.from).unwrap().equals(&ModuleMap::identity(&m)));
        let f = ModulePresentation::free_rank(&r, 3);
        assert_eq!(f.minimize().num_relations(), 0);
        assert_eq!(f.mu(), 3);
    }

    #[test]
    fn ideal_of_quadric_cone() {
        let r = rq();
        let i = iq(&r);
        assert_eq!(i.mu(), 2);
        assert_eq!(i.num_relations(), 1);
        let h = dual(&i).unwrap();
        assert_eq!(h.module.mu(), 1);
        assert!(h.module.is_free());
        assert_eq!(i.rank().unwrap(), 1);
        assert!(i.is_torsionfree().unwrap());
        assert!(!i.is_reflexive().unwrap());
        assert!(i.is_locally_free_on_punctured().unwrap());
    }

    #[test]
    fn kernel_and_cokernel_of_multiplication() {
        let r = rxy();
        let f = ModulePresentation::free_rank(&r, 1);
        let x = ModuleMap::new(&f, &f, &vec![vec![r.poly("x").unwrap()]]).unwrap();
        let (k, _) = x.kernel();
        assert_eq!(k.mu(), 1);
        assert_eq!(k.hilbert_function(0, 4), vec![0, 1, 1, 1, 1]);
        let s = s2();
        let f = ModulePresentation::free_rank(&s, 1);
        let x = ModuleMap::new(&f, &f, &vec![vec![s.poly("x").unwrap()]]).unwrap();
        let (c, _) = x.cokernel();
        assert_eq!(c.hilbert_function(0, 3), vec![1, 1, 1, 1]);
        assert_eq!(x.degree(), 1);
    }

    #[test]
    fn tensor_and_annihilator() {
        let r = rxy();
        let a = ModulePresentation::cyclic(&r, &[r.poly("x").unwrap()]).unwrap();
        let b = ModulePresentation::cyclic(&r, &[r.poly("y").unwrap()]).unwrap();
        let t = tensor(&a, &b).unwrap();
        assert_eq!(t.length().unwrap(), 1);
        assert_eq!(t.annihilator().len(), 2);
        let h = hom(&a, &ModulePresentation::free_rank(&r, 1)).unwrap();
        // (0 : x) = (y), a copy of R/(x) generated in degree 1
        assert_eq!(h.module.hilbert_function(1, 5), a.hilbert_function(0, 4));
        let s = s2();
        let sx = ModulePresentation::cyclic(&s, &[s.poly("x").unwrap()]).unwrap();
        assert_eq!(sx.annihilator(), vec![s.poly("x").unwrap()]);
        assert!(ModulePresentation::free_rank(&s, 1).annihilator().is_empty());
    }

    #[test]
    fn fitting_ideals() {
        let s = s2();
        let m = ModulePresentation::new(&s, vec![0, 0], vec![vec![s.poly("x").unwrap(), s.poly("y").unwrap()]]).unwrap();
        assert_eq!(m.fitting_ideal(1).unwrap().len(), 2);
        assert_eq!(m.fitting_ideal(2).unwrap(), vec![s.poly("1").unwrap()]);
        let c = ModulePresentation::cyclic(&s, &[s.poly("x").unwrap()]).unwrap();
        assert_eq!(c.fitting_ideal(0).unwrap(), vec![s.poly("x").unwrap()]);
    }

    #[test]
    fn torsion_of_sum_with_residue_field() {
        let r = rq();
        let k = ModulePresentation::cyclic(&r, &[r.poly("x").unwrap(), r.poly("y").unwrap(), r.poly("z").unwrap()]).unwrap();
        let m = k.direct_sum(&ModulePresentation::free_rank(&r, 1)).unwrap();
        let (t, _) = m.torsion().unwrap();
        assert_eq!(t.length().unwrap(), 1);
        assert!(m.is_locally_free_on_punctured().unwrap());
        let dd = double_dual_map(&k).unwrap();
        assert!(dd.is_zero());
    }
}
