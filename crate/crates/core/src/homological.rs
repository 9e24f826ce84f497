//! Tor, Ext, depth, canonical modules, duals, syzygies, the pushforward
//! construction, and instance checkers built on them.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::kernel_raw;
use crate::hilbert::HilbertSeries;
use crate::module::{dual, hom, subquotient, tensor, Hom, ModuleMap, ModulePresentation};
use crate::resolution::{self, resolve, resolve_ambient, FreeResolution};
use crate::ring::{Ring, RingPresentation};
use crate::scalar::Scalar;
use crate::vector::{ModVec, Term};

/// Depth of a module; the zero module has infinite depth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(d) => Some(d),
            Depth::Infinite => None,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(d) => write!(f, "{d}"),
            Depth::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for Depth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(d) => s.serialize_u64(*d as u64),
            Depth::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn default_vanishing_bound(ring: &RingPresentation) -> usize {
    2 * ring.dim() + 2
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

/// Homology at a free cover `mid` (modulo `mid_rels`) of a complex
/// `incoming -> mid -> out`, where `out` gives the target cover, its
/// relations and the images of the basis of `mid`.
fn homology(
    ring: &Ring,
    mid: &[i64],
    mid_rels: &[ModVec],
    out: Option<(&[i64], &[ModVec], &[ModVec])>,
    incoming: &[ModVec],
) -> ModulePresentation {
    let one = ring.field().one();
    let nv = ring.nvars();
    let kernel = match out {
        Some((tdeg, trels, images)) if images.iter().any(|v| !v.is_zero()) => {
            let mut extra = mid_rels.to_vec();
            extra.extend(ring.ideal_vectors(0, mid.len()));
            kernel_raw(
                &ring.space(tdeg.to_vec()),
                images,
                mid,
                trels,
                &ring.ideal_vectors(0, tdeg.len()),
                &extra,
            )
        }
        _ => (0..mid.len()).map(|c| ModVec::unit(c, nv, one.clone())).collect(),
    };
    let mut rels = incoming.to_vec();
    rels.extend_from_slice(mid_rels);
    subquotient(ring, mid, &kernel, &rels).0
}

/// `F ⊗ N` and `Hom(F, N)` for a resolution `F` and a minimal `N`.
struct Twisted<'a> {
    res: &'a FreeResolution,
    n: ModulePresentation,
}

impl<'a> Twisted<'a> {
    fn n0(&self) -> usize {
        self.n.ngens()
    }

    fn rank(&self, i: usize) -> usize {
        self.res.betti_numbers().get(i).copied().unwrap_or(0)
    }

    fn blocks(&self, i: usize) -> Vec<ModVec> {
        let n0 = self.n0();
        let mut out = Vec::new();
        for s in 0..self.rank(i) {
            for v in self.n.relation_vecs() {
                out.push(shift_comps(v, s * n0));
            }
        }
        out
    }

    fn tensor_degrees(&self, i: usize) -> Vec<i64> {
        if i >= self.res.betti_numbers().len() {
            return Vec::new();
        }
        let f = self.res.degrees(i);
        f.iter()
            .flat_map(|a| self.n.degrees().iter().map(move |b| a + b))
            .collect()
    }

    fn hom_degrees(&self, i: usize) -> Vec<i64> {
        if i >= self.res.betti_numbers().len() {
            return Vec::new();
        }
        let f = self.res.degrees(i);
        f.iter()
            .flat_map(|a| self.n.degrees().iter().map(move |b| b - a))
            .collect()
    }

    /// Images of the basis of `F_i ⊗ N` in `F_{i-1} ⊗ N`.
    fn tensor_images(&self, i: usize) -> Vec<ModVec> {
        let n0 = self.n0();
        let ord = self.res.ring().ambient().module_order();
        let cols = self.res.columns(i);
        let mut out = Vec::with_capacity(cols.len() * n0);
        for c in cols {
            for p in 0..n0 {
                out.push(c.map_comps(|t| Some(t * n0 + p), &ord));
            }
        }
        out
    }

    /// Images of the basis of `Hom(F_i, N)` in `Hom(F_{i+1}, N)`.
    fn hom_images(&self, i: usize) -> Vec<ModVec> {
        let n0 = self.n0();
        let ord = self.res.ring().ambient().module_order();
        let cols = self.res.columns(i + 1);
        let mut out = Vec::with_capacity(self.rank(i) * n0);
        for s in 0..self.rank(i) {
            for p in 0..n0 {
                let terms = cols
                    .iter()
                    .enumerate()
                    .flat_map(|(u, c)| {
                        c.component(s)
                            .map(move |t| Term {
                                comp: u * n0 + p,
                                mono: t.mono.clone(),
                                coef: t.coef.clone(),
                            })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                out.push(ModVec::from_terms(terms, &ord));
            }
        }
        out
    }

    fn available(&self, i: usize) -> bool {
        self.res.is_complete() || self.res.length() >= i + 1
    }

    fn tor(&self, i: usize) -> Result<ModulePresentation> {
        if !self.available(i) {
            return Err(Error::BoundTooSmall {
                needed: i + 1,
                have: self.res.length(),
            });
        }
        let ring = self.res.ring();
        if i > self.res.length() {
            return Ok(ModulePresentation::zero(ring));
        }
        let mid = self.tensor_degrees(i);
        let incoming = if i < self.res.length() {
            self.tensor_images(i + 1)
        } else {
            Vec::new()
        };
        let (tdeg, trels, imgs);
        let out = if i >= 1 {
            tdeg = self.tensor_degrees(i - 1);
            trels = self.blocks(i - 1);
            imgs = self.tensor_images(i);
            Some((&tdeg[..], &trels[..], &imgs[..]))
        } else {
            None
        };
        Ok(homology(ring, &mid, &self.blocks(i), out, &incoming))
    }

    fn ext(&self, i: usize) -> Result<ModulePresentation> {
        if !self.available(i) {
            return Err(Error::BoundTooSmall {
                needed: i + 1,
                have: self.res.length(),
            });
        }
        let ring = self.res.ring();
        if i > self.res.length() {
            return Ok(ModulePresentation::zero(ring));
        }
        let mid = self.hom_degrees(i);
        let incoming = if i >= 1 {
            self.hom_images(i - 1)
        } else {
            Vec::new()
        };
        let (tdeg, trels, imgs);
        let out = if i < self.res.length() {
            tdeg = self.hom_degrees(i + 1);
            trels = self.blocks(i + 1);
            imgs = self.hom_images(i);
            Some((&tdeg[..], &trels[..], &imgs[..]))
        } else {
            None
        };
        Ok(homology(ring, &mid, &self.blocks(i), out, &incoming))
    }
}

fn same_ring(m: &ModulePresentation, n: &ModulePresentation) -> Result<()> {
    if m.ring().same_ring(n.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// `Tor_i^R(M, N)` for `i` in `0..=bound`.
pub fn tor_range(m: &ModulePresentation, n: &ModulePresentation, bound: usize) -> Result<Vec<ModulePresentation>> {
    same_ring(m, n)?;
    let res = resolve(m, bound + 1);
    let t = Twisted {
        res: &res,
        n: n.minimize(),
    };
    (0..=bound).map(|i| t.tor(i)).collect()
}

pub fn tor(m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    Ok(tor_range(m, n, i)?.pop().unwrap())
}

/// `Ext^i_R(M, N)` for `i` in `0..=bound`.
pub fn ext_range(m: &ModulePresentation, n: &ModulePresentation, bound: usize) -> Result<Vec<ModulePresentation>> {
    same_ring(m, n)?;
    let res = resolve(m, bound + 1);
    ext_from_resolution(&res, n, bound)
}

fn ext_from_resolution(res: &FreeResolution, n: &ModulePresentation, bound: usize) -> Result<Vec<ModulePresentation>> {
    let t = Twisted {
        res,
        n: n.minimize(),
    };
    (0..=bound).map(|i| t.ext(i)).collect()
}

pub fn ext(m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<ModulePresentation> {
    Ok(ext_range(m, n, i)?.pop().unwrap())
}

/// Depth via Auslander–Buchsbaum over the ambient ring.
pub fn depth(m: &ModulePresentation) -> Depth {
    if m.is_zero() {
        return Depth::Infinite;
    }
    Depth::Finite(m.ring().nvars() - resolution::pd_ambient(m))
}

pub fn residue_field(ring: &Ring) -> ModulePresentation {
    let vars: Vec<_> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    ModulePresentation::cyclic(ring, &vars).expect("variables are homogeneous")
}

/// Depth as the first nonvanishing `Ext^i(k, M)`.
pub fn depth_via_ext(m: &ModulePresentation) -> Result<Depth> {
    if m.is_zero() {
        return Ok(Depth::Infinite);
    }
    let k = residue_field(m.ring());
    let top = m.dim().unwrap_or(0);
    let exts = ext_range(&k, m, top)?;
    Ok(exts
        .iter()
        .position(|e| !e.is_zero())
        .map(Depth::Finite)
        .unwrap_or(Depth::Infinite))
}

pub fn dim_ring(ring: &RingPresentation) -> usize {
    ring.dim()
}

pub fn codim(ring: &RingPresentation) -> usize {
    ring.codim()
}

pub fn is_mcm(m: &ModulePresentation) -> bool {
    !m.is_zero() && depth(m) == Depth::Finite(m.ring().dim())
}

/// `Ext^c_S(R, S)` with `c` the height of the quotient ideal, presented over
/// `R` and shifted so that its lowest generator sits in degree 0.
pub fn canonical_module(ring: &Ring) -> Result<ModulePresentation> {
    let r1 = ModulePresentation::free_rank(ring, 1);
    if ring.is_polynomial_ring() {
        return Ok(r1);
    }
    let c = ring.nvars() - ring.dim();
    let s = resolution::ambient_ring(ring);
    let res = resolve_ambient(&r1);
    let e = ext_from_resolution(&res, &ModulePresentation::free_rank(&s, 1), c)?.pop().unwrap();
    let e = e.minimize();
    let lo = e.degrees().iter().copied().min().unwrap_or(0);
    let over_r = ModulePresentation::from_parts(
        ring,
        e.degrees().iter().map(|d| d - lo).collect(),
        e.relation_vecs().to_vec(),
    );
    Ok(over_r.minimize())
}

/// `M* = Hom(M, R)`.
pub fn star_dual(m: &ModulePresentation) -> Result<ModulePresentation> {
    Ok(dual(m)?.module)
}

/// `M^∨ = Hom(M, ω)`.
pub fn vee_dual(m: &ModulePresentation) -> Result<ModulePresentation> {
    let w = canonical_module(m.ring())?;
    Ok(hom(m, &w)?.module)
}

pub fn vee_dual_with(m: &ModulePresentation, omega: &ModulePresentation) -> Result<ModulePresentation> {
    Ok(hom(m, omega)?.module)
}

/// Image of `d_j` in the minimal resolution.
pub fn syzygy(m: &ModulePresentation, j: usize) -> Result<ModulePresentation> {
    if j == 0 {
        return Ok(m.minimize());
    }
    let res = resolve(m, j + 1);
    let ring = m.ring();
    if j > res.length() {
        if res.is_complete() {
            return Ok(ModulePresentation::zero(ring));
        }
        return Err(Error::BoundTooSmall {
            needed: j,
            have: res.length(),
        });
    }
    let rels = if j < res.length() {
        res.columns(j + 1).to_vec()
    } else if res.is_complete() {
        Vec::new()
    } else {
        return Err(Error::BoundTooSmall {
            needed: j + 1,
            have: res.length(),
        });
    };
    Ok(ModulePresentation::from_parts(ring, res.degrees(j).to_vec(), rels))
}

/// `0 -> M -> R^m -> M1 -> 0` with `u = (f_1, ..., f_m)` for minimal
/// generators `f_i` of `M*`.
#[derive(Clone, Debug)]
pub struct Pushforward {
    pub module: ModulePresentation,
    pub u: ModuleMap,
    pub projection: ModuleMap,
    pub rank: usize,
}

impl Pushforward {
    /// `u` injective, projection surjective, `ker = im`.
    pub fn is_exact(&self) -> bool {
        if !self.u.is_injective() || !self.projection.is_surjective() {
            return false;
        }
        let k = self.projection.kernel_vectors();
        let free = self.u.target();
        k.iter().all(|v| self.u.lift(v).is_some() || free.reduce(v).is_zero())
            && self.u.then(&self.projection).map(|c| c.is_zero()).unwrap_or(false)
    }
}

pub fn pushforward(m: &ModulePresentation) -> Result<Pushforward> {
    let ring = m.ring();
    let d: Hom = dual(m)?;
    let s = d.module.ngens();
    let free = Arc::new(ModulePresentation::free(
        ring,
        d.module.degrees().iter().map(|x| -x).collect(),
    ));
    let ord = ring.ambient().module_order();
    let images: Vec<ModVec> = (0..m.ngens())
        .map(|i| {
            let terms = (0..s)
                .flat_map(|t| shift_comps(&d.witnesses[t].images()[i], t).terms)
                .collect();
            ModVec::from_terms(terms, &ord)
        })
        .collect();
    let u = ModuleMap::from_images(Arc::new(m.clone()), free, images)?;
    if !u.is_injective() {
        return Err(Error::NotTorsionless);
    }
    let (module, projection) = u.cokernel();
    Ok(Pushforward {
        module,
        u,
        projection,
        rank: s,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorEntry {
    pub index: usize,
    pub zero: bool,
    pub length: Option<i64>,
    pub hilbert: HilbertSeries,
}

fn tor_entry(i: usize, t: &ModulePresentation) -> TorEntry {
    TorEntry {
        index: i,
        zero: t.is_zero(),
        length: t.length().ok(),
        hilbert: t.hilbert_series(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthFormulaReport {
    pub depth_m: Depth,
    pub depth_n: Depth,
    pub depth_r: Depth,
    pub depth_mn: Depth,
    pub holds: bool,
    pub defect: Option<i64>,
    pub tor: Vec<TorEntry>,
    pub bound: usize,
    /// Set when the ring is a complete intersection and `Tor_1..bound`
    /// vanish with a decisive bound: then `holds` must be true.
    pub implication: Option<bool>,
}

fn depth_sum(a: Depth, b: Depth) -> Depth {
    match (a, b) {
        (Depth::Finite(x), Depth::Finite(y)) => Depth::Finite(x + y),
        _ => Depth::Infinite,
    }
}

pub fn depth_formula_check(m: &ModulePresentation, n: &ModulePresentation, bound: usize) -> Result<DepthFormulaReport> {
    same_ring(m, n)?;
    if m.is_zero() || n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ring = m.ring();
    let mn = tensor(m, n)?;
    let (dm, dn, dr, dmn) = (
        depth(m),
        depth(n),
        depth(&ModulePresentation::free_rank(ring, 1)),
        depth(&mn),
    );
    let holds = depth_sum(dm, dn) == depth_sum(dr, dmn);
    let defect = match (dr, dmn) {
        (Depth::Finite(a), Depth::Finite(b)) => Some(a as i64 - b as i64),
        _ => None,
    };
    let tors = tor_range(m, n, bound)?;
    let tor: Vec<TorEntry> = tors.iter().enumerate().skip(1).map(|(i, t)| tor_entry(i, t)).collect();
    let vanish = tor.iter().all(|t| t.zero);
    let ci = ring.flags().complete_intersection == Some(true);
    let implication = (ci && vanish && bound >= default_vanishing_bound(ring)).then_some(holds);
    Ok(DepthFormulaReport {
        depth_m: dm,
        depth_n: dn,
        depth_r: dr,
        depth_mn: dmn,
        holds,
        defect,
        tor,
        bound,
        implication,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub n: usize,
    /// `depth(M ⊗ N) >= n`.
    pub depth_side: bool,
    /// `Ext^i(M, N^∨) = 0` for `i = d-n+1..=d`.
    pub ext_side: bool,
    pub nonvanishing_ext: Vec<usize>,
    pub depth_mn: Depth,
    /// `n <= depth(M)`, the range where the two sides must agree.
    pub within_hypotheses: bool,
    pub agree: bool,
}

/// Both sides of the Ext-range criterion for `depth(M ⊗ N) >= n`.
pub fn ext_depth_criterion(m: &ModulePresentation, n: &ModulePresentation, k: usize) -> Result<CriterionReport> {
    same_ring(m, n)?;
    let ring = m.ring();
    let d = ring.dim();
    if k == 0 || k > d {
        return Err(Error::HypothesisViolated(format!("need 1 <= n <= dim R = {d}")));
    }
    if !m.is_locally_free_on_punctured()? {
        return Err(Error::HypothesisViolated("M is not locally free on the punctured spectrum".into()));
    }
    if !is_mcm(n) {
        return Err(Error::HypothesisViolated("N is not maximal Cohen-Macaulay".into()));
    }
    let within = depth(m) >= Depth::Finite(k);
    let dmn = depth(&tensor(m, n)?);
    let depth_side = dmn >= Depth::Finite(k);
    let nv = vee_dual(n)?;
    let exts = ext_range(m, &nv, d)?;
    let nonvanishing: Vec<usize> = (d + 1 - k..=d).filter(|&i| !exts[i].is_zero()).collect();
    let ext_side = nonvanishing.is_empty();
    Ok(CriterionReport {
        n: k,
        depth_side,
        ext_side,
        nonvanishing_ext: nonvanishing,
        depth_mn: dmn,
        within_hypotheses: within,
        agree: depth_side == ext_side,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub index: usize,
    pub ext_length: i64,
    pub tor_length: i64,
    pub equal: bool,
}

/// `length Ext^{d+i}(M, N^∨) = length Tor_i(M, N)`.
pub fn length_duality_check(m: &ModulePresentation, n: &ModulePresentation, i: usize) -> Result<DualityReport> {
    same_ring(m, n)?;
    if i == 0 {
        return Err(Error::HypothesisViolated("i must be positive".into()));
    }
    if !m.is_locally_free_on_punctured()? {
        return Err(Error::HypothesisViolated("M is not locally free on the punctured spectrum".into()));
    }
    if !is_mcm(n) {
        return Err(Error::HypothesisViolated("N is not maximal Cohen-Macaulay".into()));
    }
    let d = m.ring().dim();
    let t = tor(m, n, i)?;
    let tor_length = t
        .length()
        .map_err(|_| Error::HypothesisViolated(format!("Tor_{i} has positive dimension")))?;
    let e = ext(m, &vee_dual(n)?, d + i)?;
    let ext_length = e
        .length()
        .map_err(|_| Error::HypothesisViolated(format!("Ext^{} has positive dimension", d + i)))?;
    Ok(DualityReport {
        index: i,
        ext_length,
        tor_length,
        equal: ext_length == tor_length,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub tensor_mcm: bool,
    pub tor_vanish: bool,
    pub ext_mn_vanish: bool,
    pub ext_nm_vanish: bool,
    pub bound: usize,
    pub consistent: bool,
}

fn vanish_through(mods: &[ModulePresentation]) -> bool {
    mods.iter().skip(1).all(|m| m.is_zero())
}

pub fn cor25_equivalence_check(m: &ModulePresentation, n: &ModulePresentation, bound: usize) -> Result<EquivalenceReport> {
    same_ring(m, n)?;
    let f = m.ring().flags();
    if f.complete_intersection != Some(true) || f.isolated_singularity != Some(true) {
        return Err(Error::HypothesisViolated(
            "ring must be a complete intersection with an isolated singularity".into(),
        ));
    }
    if !is_mcm(m) || !is_mcm(n) {
        return Err(Error::HypothesisViolated("M and N must be maximal Cohen-Macaulay".into()));
    }
    let tensor_mcm = is_mcm(&tensor(m, n)?);
    let tor_vanish = vanish_through(&tor_range(m, n, bound)?);
    let ext_mn_vanish = vanish_through(&ext_range(m, n, bound)?);
    let ext_nm_vanish = vanish_through(&ext_range(n, m, bound)?);
    let consistent = tensor_mcm == tor_vanish && tor_vanish == ext_mn_vanish && ext_mn_vanish == ext_nm_vanish;
    Ok(EquivalenceReport {
        tensor_mcm,
        tor_vanish,
        ext_mn_vanish,
        ext_nm_vanish,
        bound,
        consistent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SemidualizingReport {
    pub homothety_injective: bool,
    pub homothety_surjective: bool,
    pub nonvanishing_ext: Vec<usize>,
    pub bound: usize,
    pub semidualizing: bool,
}

/// Homothety `R -> Hom(C, C)` an isomorphism and `Ext^{1..bound}(C, C) = 0`.
pub fn semidualizing_test(c: &ModulePresentation, bound: usize) -> Result<SemidualizingReport> {
    if c.is_zero() {
        return Err(Error::ZeroElement);
    }
    let ring = c.ring();
    let h = hom(c, c)?;
    let id = ModuleMap::identity(c);
    let coords = h
        .element_of(&id)
        .ok_or_else(|| Error::Other("identity not expressible in Hom(C, C)".into()))?;
    let r1 = Arc::new(ModulePresentation::free_rank(ring, 1));
    let homothety = ModuleMap::from_images(r1, Arc::new(h.module.clone()), vec![coords])?;
    let inj = homothety.is_injective();
    let surj = homothety.is_surjective();
    let exts = ext_range(c, c, bound)?;
    let nonvanishing: Vec<usize> = (1..=bound).filter(|&i| !exts[i].is_zero()).collect();
    Ok(SemidualizingReport {
        homothety_injective: inj,
        homothety_surjective: surj,
        semidualizing: inj && surj && nonvanishing.is_empty(),
        nonvanishing_ext: nonvanishing,
        bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ArReport {
    pub vanishes: bool,
    pub is_free: bool,
    pub bound: usize,
    /// Vanishing forces freeness.
    pub consistent: bool,
}

pub fn ar_test(m: &ModulePresentation, bound: usize) -> Result<ArReport> {
    let ring = m.ring();
    if ring.flags().gorenstein != Some(true) {
        return Err(Error::HypothesisViolated("ring must be Gorenstein".into()));
    }
    let target = m.direct_sum(&ModulePresentation::free_rank(ring, 1))?;
    let vanishes = vanish_through(&ext_range(m, &target, bound)?);
    let is_free = m.is_free();
    Ok(ArReport {
        vanishes,
        is_free,
        bound,
        consistent: !vanishes || is_free,
    })
}

#[derive(Clone, Debug)]
pub struct HighDepthPair {
    pub m: ModulePresentation,
    pub depth_achieved: Depth,
    pub m_free: bool,
}

/// `M = pushforward(pushforward(N*))` and `depth(M ⊗ N)`.
pub fn high_depth_pair(n: &ModulePresentation) -> Result<HighDepthPair> {
    let ring = n.ring();
    let d = ring.dim();
    if d < 3 {
        return Err(Error::HypothesisViolated(format!("need dim R >= 3, have {d}")));
    }
    if n.rank()? != 1 || !is_mcm(n) || n.is_free() || !n.is_locally_free_on_punctured()? {
        return Err(Error::HypothesisViolated(
            "N must be a nonfree rank-one MCM module locally free on the punctured spectrum".into(),
        ));
    }
    let p1 = pushforward(&star_dual(n)?)?;
    let p2 = pushforward(&p1.module)?;
    let m = p2.module;
    let depth_achieved = depth(&tensor(&m, n)?);
    let m_free = m.is_free();
    Ok(HighDepthPair {
        m,
        depth_achieved,
        m_free,
    })
}

/// Outcome of a witness search for an isomorphism.
#[derive(Clone, Debug)]
pub enum IsoWitness {
    Found { forward: ModuleMap, backward: ModuleMap },
    NotIdentified,
}

impl IsoWitness {
    pub fn found(&self) -> bool {
        matches!(self, IsoWitness::Found { .. })
    }
}

/// Looks for an isomorphism `M -> N` (up to a graded shift) among
/// combinations of Hom generators of the matching degree.
pub fn iso_witness(m: &ModulePresentation, n: &ModulePresentation) -> Result<IsoWitness> {
    same_ring(m, n)?;
    let m = m.minimize();
    let n = n.minimize();
    if m.ngens() != n.ngens() {
        return Ok(IsoWitness::NotIdentified);
    }
    if m.ngens() == 0 {
        let id = ModuleMap::from_images(Arc::new(m.clone()), Arc::new(n.clone()), vec![])?;
        let back = ModuleMap::from_images(Arc::new(n.clone()), Arc::new(m.clone()), vec![])?;
        return Ok(IsoWitness::Found { forward: id, backward: back });
    }
    let shift = n.degrees().iter().min().unwrap() - m.degrees().iter().min().unwrap();
    if m.hilbert_series().shift(shift) != n.hilbert_series() {
        return Ok(IsoWitness::NotIdentified);
    }
    let h = hom(&m, &n)?;
    let gens: Vec<usize> = (0..h.module.ngens())
        .filter(|&t| h.module.degrees()[t] == shift)
        .collect();
    if gens.is_empty() {
        return Ok(IsoWitness::NotIdentified);
    }
    let field = m.ring().field();
    let nv = m.ring().nvars();
    for seed in 0..4i64 {
        let terms: Vec<Term> = gens
            .iter()
            .enumerate()
            .map(|(k, &t)| Term {
                comp: t,
                mono: crate::monomial::Monomial::one(nv),
                coef: coefficient(field, seed, k as i64),
            })
            .filter(|t| !t.coef.is_zero())
            .collect();
        let v = ModVec::from_terms(terms, &h.module.space().order);
        let phi = h.element_map(&v);
        if !phi.is_isomorphism() {
            continue;
        }
        if let Some(psi) = inverse(&phi) {
            return Ok(IsoWitness::Found {
                forward: phi,
                backward: psi,
            });
        }
    }
    Ok(IsoWitness::NotIdentified)
}

fn coefficient(field: crate::scalar::Field, seed: i64, k: i64) -> Scalar {
    if seed == 0 {
        return field.one();
    }
    field.from_i64((k * (2 * seed + 1) + seed * seed) % 17 + 1)
}

/// Inverse of an isomorphism, checked on both sides.
fn inverse(phi: &ModuleMap) -> Option<ModuleMap> {
    let n = phi.target();
    let nv = n.ring().nvars();
    let one = n.ring().field().one();
    let mut images = Vec::with_capacity(n.ngens());
    for p in 0..n.ngens() {
        images.push(phi.lift(&ModVec::unit(p, nv, one.clone()))?);
    }
    let psi = ModuleMap::from_images(Arc::new(n.clone()), Arc::new(phi.source().clone()), images).ok()?;
    let back = phi.then(&psi).ok()?;
    let forth = psi.then(phi).ok()?;
    (back.equals(&ModuleMap::identity(phi.source())) && forth.equals(&ModuleMap::identity(n))).then_some(psi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::scalar::Field;

    fn rq() -> Ring {
        RingPresentation::parse(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex, &["x*y - z^2"]).unwrap()
    }

    fn rxy() -> Ring {
        RingPresentation::parse(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex, &["x*y"]).unwrap()
    }

    fn ideal(r: &Ring, g: &[&str]) -> ModulePresentation {
        ModulePresentation::ideal(r, &g.iter().map(|t| r.poly(t).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    fn cyc(r: &Ring, g: &[&str]) -> ModulePresentation {
        ModulePresentation::cyclic(r, &g.iter().map(|t| r.poly(t).unwrap()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn tor_over_node() {
        let r = rxy();
        let a = cyc(&r, &["x"]);
        let b = cyc(&r, &["y"]);
        let t = tor_range(&a, &b, 3).unwrap();
        assert_eq!(t[0].length().unwrap(), 1);
        assert!(t[1].is_zero());
        assert_eq!(t[2].length().unwrap(), 1);
        assert!(t[3].is_zero());
    }

    #[test]
    fn ext_over_node() {
        let r = rxy();
        let a = cyc(&r, &["x"]);
        let e = ext_range(&a, &a, 3).unwrap();
        assert!(e[1].is_zero());
        assert_eq!(e[2].length().unwrap(), 1);
        let f = ModulePresentation::free_rank(&r, 2);
        assert!(ext_range(&f, &a, 2).unwrap()[1..].iter().all(|m| m.is_zero()));
    }

    #[test]
    fn depths_on_quadric_cone() {
        let r = rq();
        let iq = ideal(&r, &["x", "y"]);
        let lq = ideal(&r, &["x", "z"]);
        assert_eq!(depth(&iq), Depth::Finite(1));
        assert_eq!(depth(&ModulePresentation::free_rank(&r, 1)), Depth::Finite(2));
        assert_eq!(depth(&ModulePresentation::zero(&r)), Depth::Infinite);
        assert_eq!(depth_via_ext(&iq).unwrap(), Depth::Finite(1));
        assert!(is_mcm(&lq));
        assert!(!is_mcm(&iq));
        let k = residue_field(&r);
        let e = ext_range(&k, &ModulePresentation::free_rank(&r, 1), 2).unwrap();
        assert!(e[0].is_zero() && e[1].is_zero() && !e[2].is_zero());
    }

    #[test]
    fn canonical_and_duals() {
        let r = rq();
        let w = canonical_module(&r).unwrap();
        assert!(w.is_free());
        assert_eq!(w.mu(), 1);
        let lq = ideal(&r, &["x", "z"]);
        let vv = vee_dual(&vee_dual(&lq).unwrap()).unwrap();
        assert!(iso_witness(&vv, &lq).unwrap().found());
        let s1 = syzygy(&lq, 1).unwrap();
        assert_eq!(s1.mu(), 2);
        assert!(is_mcm(&s1));
        let iq = ideal(&r, &["x", "y"]);
        assert_eq!(depth(&syzygy(&iq, 1).unwrap()), Depth::Finite(2));
        assert!(syzygy(&ModulePresentation::free_rank(&r, 1), 1).unwrap().is_zero());
    }

    #[test]
    fn pushforward_of_rank_one() {
        let r = rq();
        let lq = ideal(&r, &["x", "z"]);
        let p = pushforward(&lq).unwrap();
        assert_eq!(p.rank, 2);
        assert!(p.is_exact());
        assert!(is_mcm(&p.module));
        let f = pushforward(&ModulePresentation::free_rank(&r, 1)).unwrap();
        assert!(f.module.is_zero());
        assert!(matches!(pushforward(&residue_field(&r)), Err(Error::NotTorsionless)));
    }

    #[test]
    fn checkers_on_quadric_cone() {
        let r = rq();
        let iq = ideal(&r, &["x", "y"]);
        let lq = ideal(&r, &["x", "z"]);
        let one = ModulePresentation::free_rank(&r, 1);
        let rep = depth_formula_check(&iq, &one, 6).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.defect, Some(1));
        let rep = depth_formula_check(&lq, &lq, 6).unwrap();
        assert!(!rep.holds);
        let c = cor25_equivalence_check(&lq, &lq, 6).unwrap();
        assert!(c.consistent && !c.tensor_mcm);
        let c = cor25_equivalence_check(&one, &lq, 6).unwrap();
        assert!(c.consistent && c.tensor_mcm);
        let e = ext_depth_criterion(&iq, &one, 1).unwrap();
        assert!(e.agree && e.depth_side);
        let e = ext_depth_criterion(&iq, &one, 2).unwrap();
        assert!(e.agree && !e.depth_side);
        assert!(semidualizing_test(&one, 4).unwrap().semidualizing);
        assert!(!semidualizing_test(&lq, 4).unwrap().semidualizing);
        let ar = ar_test(&lq, 4).unwrap();
        assert!(!ar.vanishes && ar.consistent);
        let ld = length_duality_check(&iq, &lq, 1).unwrap();
        assert!(ld.equal);
    }
}
