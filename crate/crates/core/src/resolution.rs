//! Minimal graded free resolutions: finite over the ambient polynomial ring,
//! truncated over a quotient.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde_json::json;

use crate::engine::Basis;
use crate::error::{Error, Result};
use crate::groebner::{kernel_raw, minimal_subset};
use crate::matrix::{self, Matrix};
use crate::module::ModulePresentation;
use crate::ring::{Ring, RingPresentation};
use crate::vector::ModVec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Over {
    Ambient,
    Quotient,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    over: Over,
    ring: Ring,
    degrees: Vec<Vec<i64>>,
    maps: Vec<Vec<ModVec>>,
    bound: Option<usize>,
    complete: bool,
}

pub fn default_bound(ring: &RingPresentation) -> usize {
    2 * ring.dim() + 4
}

/// Minimal resolution over the module's own ring, with `bound` maps at most.
pub fn resolve(m: &ModulePresentation, bound: usize) -> FreeResolution {
    let over = if m.ring().is_polynomial_ring() {
        Over::Ambient
    } else {
        Over::Quotient
    };
    build(m.ring(), m, Some(bound), over)
}

/// Minimal resolution of `M` regarded as a module over the ambient ring.
pub fn resolve_ambient(m: &ModulePresentation) -> FreeResolution {
    let s = ambient_ring(m.ring());
    let mut rels: Vec<Vec<crate::poly::Polynomial>> = matrix::transpose(&m.relation_matrix());
    for c in 0..m.ngens() {
        for g in m.ring().basis() {
            let mut col = vec![crate::poly::Polynomial::zero(s.ambient()); m.ngens()];
            col[c] = g.clone();
            rels.push(col);
        }
    }
    let lifted = ModulePresentation::new(&s, m.degrees().to_vec(), rels).expect("homogeneous relations");
    build(&s, &lifted, None, Over::Ambient)
}

pub(crate) fn ambient_ring(r: &Ring) -> Ring {
    if r.is_polynomial_ring() {
        return r.clone();
    }
    RingPresentation::new(r.ambient().clone(), vec![]).expect("polynomial ring")
}

/// Projective dimension of `M` over the ambient ring.
pub fn pd_ambient(m: &ModulePresentation) -> usize {
    resolve_ambient(m).length()
}

/// Betti numbers of `S/I` over `S`; used for structural flags.
pub(crate) fn ambient_betti_of_ring(ring: &RingPresentation) -> Option<Vec<usize>> {
    let s = RingPresentation::new(ring.ambient().clone(), vec![]).ok()?;
    let cols: Vec<Vec<crate::poly::Polynomial>> = ring.basis().iter().map(|g| vec![g.clone()]).collect();
    let m = ModulePresentation::new(&s, vec![0], cols).ok()?;
    Some(build(&s, &m, None, Over::Ambient).betti_numbers())
}

fn build(ring: &Ring, m: &ModulePresentation, bound: Option<usize>, over: Over) -> FreeResolution {
    let m = m.minimize();
    let mut degrees = vec![m.degrees().to_vec()];
    let mut maps: Vec<Vec<ModVec>> = Vec::new();
    let mut cols = m.relation_vecs().to_vec();
    let mut complete = false;
    loop {
        if cols.is_empty() {
            complete = true;
            break;
        }
        if bound.is_some_and(|b| maps.len() >= b) {
            break;
        }
        let prev = degrees.last().unwrap().clone();
        let sp = ring.space(prev.clone());
        let cur: Vec<i64> = cols.iter().map(|v| sp.degree_of(v).unwrap()).collect();
        maps.push(cols.clone());
        degrees.push(cur.clone());
        if bound.is_some_and(|b| maps.len() >= b) {
            break;
        }
        let k = kernel_raw(
            &sp,
            &cols,
            &cur,
            &[],
            &ring.ideal_vectors(0, prev.len()),
            &ring.ideal_vectors(0, cur.len()),
        );
        let k = ModulePresentation::from_parts(ring, cur.clone(), k);
        let keep = minimal_subset(&ring.space(cur.clone()), k.relation_vecs(), &ring.ideal_vectors(0, cur.len()));
        cols = keep.into_iter().map(|i| k.relation_vecs()[i].clone()).collect();
    }
    FreeResolution {
        over,
        ring: ring.clone(),
        degrees,
        maps,
        bound,
        complete,
    }
}

impl FreeResolution {
    pub(crate) fn from_parts(
        over: Over,
        ring: &Ring,
        degrees: Vec<Vec<i64>>,
        maps: Vec<Vec<ModVec>>,
        bound: Option<usize>,
        complete: bool,
    ) -> FreeResolution {
        FreeResolution {
            over,
            ring: ring.clone(),
            degrees,
            maps,
            bound,
            complete,
        }
    }

    pub fn over(&self) -> Over {
        self.over
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Index of the last nonzero free module computed.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn bound(&self) -> Option<usize> {
        self.bound
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.len()).collect()
    }

    /// Generator degrees of `F_i`.
    pub fn degrees(&self, i: usize) -> &[i64] {
        &self.degrees[i]
    }

    pub(crate) fn columns(&self, i: usize) -> &[ModVec] {
        &self.maps[i - 1]
    }

    /// `d_i : F_i -> F_{i-1}` as a row-major matrix, `1 <= i <= length`.
    pub fn map(&self, i: usize) -> Matrix {
        matrix::from_columns(self.ring.ambient(), self.degrees[i - 1].len(), &self.maps[i - 1])
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (i, ds) in self.degrees.iter().enumerate() {
            for &d in ds {
                *entries.entry((i, d)).or_insert(0usize) += 1;
            }
        }
        BettiTable { entries }
    }

    fn apply(&self, i: usize, v: &ModVec) -> ModVec {
        let ord = self.ring.ambient().module_order();
        let cols = &self.maps[i - 1];
        let mut acc = ModVec::zero();
        for t in &v.terms {
            acc = acc.axpy(&t.coef, &t.mono, &cols[t.comp], &ord);
        }
        acc
    }

    fn ideal_basis(&self, i: usize) -> Basis {
        Basis::new(
            self.ring.space(self.degrees[i].clone()),
            self.ring.ideal_vectors(0, self.degrees[i].len()),
        )
    }

    /// `d_i ∘ d_{i+1} = 0` modulo the quotient ideal.
    pub fn composites_vanish(&self) -> bool {
        (1..self.maps.len()).all(|i| {
            let ib = self.ideal_basis(i - 1);
            self.maps[i].iter().all(|c| ib.normal_form(&self.apply(i, c)).is_zero())
        })
    }

    /// Every matrix entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.maps
            .iter()
            .all(|cols| cols.iter().all(|c| c.terms.iter().all(|t| !t.mono.is_one())))
    }

    /// Homology vanishes at every interior spot: `ker d_i = im d_{i+1}`.
    pub fn verify_exactness(&self) -> bool {
        if !self.composites_vanish() {
            return false;
        }
        let upto = if self.complete {
            self.maps.len() + 1
        } else {
            self.maps.len()
        };
        for i in 1..upto {
            let prev = &self.degrees[i - 1];
            let cur = &self.degrees[i];
            let k = kernel_raw(
                &self.ring.space(prev.clone()),
                &self.maps[i - 1],
                cur,
                &[],
                &self.ring.ideal_vectors(0, prev.len()),
                &self.ring.ideal_vectors(0, cur.len()),
            );
            let mut span = self.maps.get(i).cloned().unwrap_or_default();
            span.extend(self.ring.ideal_vectors(0, cur.len()));
            let b = Basis::compute(self.ring.space(cur.clone()), span);
            if !k.iter().all(|v| b.contains(v)) {
                return false;
            }
        }
        true
    }

    /// Smallest `i >= 1` with `im d_{i+p} = im d_i` after a degree-preserving
    /// relabeling of the free modules and a graded shift, for `p` in {1, 2}.
    pub fn periodicity(&self) -> Option<(usize, usize)> {
        for p in 1..=2 {
            for i in 1..=self.maps.len() {
                if i + p > self.maps.len() {
                    break;
                }
                if self.same_image(i, i + p) {
                    return Some((i, p));
                }
            }
        }
        None
    }

    fn same_image(&self, i: usize, j: usize) -> bool {
        let (da, db) = (&self.degrees[i - 1], &self.degrees[j - 1]);
        if da.len() != db.len() || self.maps[i - 1].len() != self.maps[j - 1].len() || da.is_empty() {
            return false;
        }
        let shift = db.iter().min().unwrap() - da.iter().min().unwrap();
        let mut sa = da.clone();
        let mut sb: Vec<i64> = db.iter().map(|d| d - shift).collect();
        sa.sort_unstable();
        sb.sort_unstable();
        if sa != sb {
            return false;
        }
        let ord = self.ring.ambient().module_order();
        let sp = self.ring.space(da.clone());
        let mut span_a = self.maps[i - 1].clone();
        span_a.extend(self.ring.ideal_vectors(0, da.len()));
        let ba = Basis::compute(sp.clone(), span_a);
        let mut tried = 0usize;
        let mut found = false;
        for_each_perm(da, &db.iter().map(|d| d - shift).collect::<Vec<_>>(), &mut |perm| {
            tried += 1;
            if tried > 5040 {
                return true;
            }
            let cols_b: Vec<ModVec> = self.maps[j - 1].iter().map(|v| v.map_comps(|c| Some(perm[c]), &ord)).collect();
            if !cols_b.iter().all(|v| ba.contains(v)) {
                return false;
            }
            let mut span_b = cols_b;
            span_b.extend(self.ring.ideal_vectors(0, da.len()));
            let bb = Basis::compute(sp.clone(), span_b);
            if self.maps[i - 1].iter().all(|v| bb.contains(v)) {
                found = true;
                return true;
            }
            false
        });
        found
    }
}

/// Calls `f` with bijections `perm` (index in `b` -> index in `a`) that
/// preserve degrees; stops when `f` returns true.
fn for_each_perm(a: &[i64], b: &[i64], f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(a: &[i64], b: &[i64], k: usize, used: &mut Vec<bool>, perm: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if k == b.len() {
            return f(perm);
        }
        for i in 0..a.len() {
            if !used[i] && a[i] == b[k] {
                used[i] = true;
                perm.push(i);
                if rec(a, b, k + 1, used, perm, f) {
                    return true;
                }
                perm.pop();
                used[i] = false;
            }
        }
        false
    }
    rec(a, b, 0, &mut vec![false; a.len()], &mut Vec::new(), f);
}

/// Graded Betti numbers `β_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        let n = self.entries.keys().map(|k| k.0 + 1).max().unwrap_or(0);
        let mut t = vec![0; n];
        for (&(i, _), &v) in &self.entries {
            t[i] += v;
        }
        t
    }

    fn rows(&self) -> (i64, Vec<Vec<usize>>) {
        let cols = self.totals().len();
        if cols == 0 {
            return (0, Vec::new());
        }
        let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min().unwrap();
        let hi = self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap();
        let rows = (lo..=hi)
            .map(|r| (0..cols).map(|i| self.get(i, r + i as i64)).collect())
            .collect();
        (lo, rows)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let (lo, rows) = self.rows();
        json!({ "first_row": lo, "totals": self.totals(), "rows": rows })
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, rows) = self.rows();
        let totals = self.totals();
        let w = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1);
        write!(f, "{:>7}", "")?;
        for i in 0..totals.len() {
            write!(f, " {:>w$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for t in &totals {
            write!(f, " {:>w$}", t)?;
        }
        for (k, row) in rows.iter().enumerate() {
            writeln!(f)?;
            write!(f, "{:>7}", format!("{}:", lo + k as i64))?;
            for v in row {
                if *v == 0 {
                    write!(f, " {:>w$}", ".")?;
                } else {
                    write!(f, " {:>w$}", v)?;
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Finite projective dimension.
    Zero,
    /// Betti numbers bounded.
    Bounded,
    /// Polynomial growth `β_n ≤ γ n^(r-1)` with `r >= 2`.
    Polynomial(usize),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityEstimate {
    pub window: (usize, usize),
    pub verdict: Verdict,
    pub gamma: Ratio<i64>,
    pub periodic: bool,
    pub betti: Vec<usize>,
}

impl ComplexityEstimate {
    /// Complexity when the verdict gives one.
    pub fn complexity(&self) -> Option<usize> {
        match self.verdict {
            Verdict::Zero => Some(0),
            Verdict::Bounded => Some(1),
            Verdict::Polynomial(r) => Some(r),
            Verdict::Inconclusive => None,
        }
    }

    /// Whether `γ` bounds the window.
    pub fn witness_holds(&self) -> bool {
        let r = match self.complexity() {
            Some(0) => return self.betti[self.window.0..=self.window.1.min(self.betti.len() - 1)].iter().all(|&b| b == 0),
            Some(r) => r,
            None => return true,
        };
        (self.window.0..=self.window.1).all(|n| {
            let b = *self.betti.get(n).unwrap_or(&0) as i64;
            Ratio::from_integer(b) <= self.gamma * Ratio::from_integer((n as i64).pow(r as u32 - 1))
        })
    }
}

/// Complexity from a finite window of Betti numbers. Exact only when the
/// window shows periodicity of the differentials.
pub fn complexity_estimate(m: &ModulePresentation, bound: usize) -> Result<ComplexityEstimate> {
    if bound < 4 {
        return Err(Error::BoundTooSmall { needed: 4, have: bound });
    }
    let res = resolve(m, bound);
    let betti = res.betti_numbers();
    if res.is_complete() {
        return Ok(ComplexityEstimate {
            window: (res.length() + 1, bound),
            verdict: Verdict::Zero,
            gamma: Ratio::from_integer(0),
            periodic: false,
            betti,
        });
    }
    let last = betti.len() - 1;
    let window = (1, last);
    let periodic = res.periodicity().is_some();
    let gamma_for = |r: usize| -> Ratio<i64> {
        (1..=last)
            .map(|n| Ratio::new(betti[n] as i64, (n as i64).pow(r as u32 - 1)))
            .max()
            .unwrap()
    };
    if periodic {
        return Ok(ComplexityEstimate {
            window,
            verdict: Verdict::Bounded,
            gamma: gamma_for(1),
            periodic,
            betti,
        });
    }
    // smallest r for which β_n / n^(r-1) stops growing on the upper half
    let tail = (last / 2).max(1);
    for r in 1..=last {
        let q: Vec<Ratio<i64>> = (tail..=last)
            .map(|n| Ratio::new(betti[n] as i64, (n as i64).pow(r as u32 - 1)))
            .collect();
        if q.windows(2).all(|w| w[1] <= w[0]) {
            let verdict = if r == 1 { Verdict::Bounded } else { Verdict::Polynomial(r) };
            return Ok(ComplexityEstimate {
                window,
                verdict,
                gamma: gamma_for(r),
                periodic,
                betti,
            });
        }
        if r > res.ring().edim() {
            break;
        }
    }
    Ok(ComplexityEstimate {
        window,
        verdict: Verdict::Inconclusive,
        gamma: Ratio::from_integer(0),
        periodic,
        betti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::scalar::Field;

    fn rq() -> Ring {
        RingPresentation::parse(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex, &["x*y - z^2"]).unwrap()
    }

    #[test]
    fn hypersurface_over_ambient() {
        let r = rq();
        let res = resolve_ambient(&ModulePresentation::free_rank(&r, 1));
        assert_eq!(res.betti_numbers(), vec![1, 1]);
        assert!(res.is_complete());
        assert_eq!(res.map(1)[0][0], r.poly("x*y - z^2").unwrap());
    }

    #[test]
    fn koszul_complex() {
        let s = RingPresentation::parse(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex, &[]).unwrap();
        let k = ModulePresentation::cyclic(&s, &[s.poly("x").unwrap(), s.poly("y").unwrap()]).unwrap();
        let res = resolve(&k, 10);
        assert_eq!(res.betti_numbers(), vec![1, 2, 1]);
        assert!(res.verify_exactness());
        assert!(res.is_minimal());
        assert_eq!(res.betti_table().to_string(), "        0 1 2\n total: 1 2 1\n     0: 1 2 1");
    }

    #[test]
    fn periodic_resolution_of_rank_one_mcm() {
        let r = rq();
        let l = ModulePresentation::ideal(&r, &[r.poly("x").unwrap(), r.poly("z").unwrap()]).unwrap();
        let res = resolve(&l, 6);
        assert_eq!(res.betti_numbers(), vec![2; 7]);
        assert!(res.composites_vanish());
        assert!(res.is_minimal());
        assert!(res.verify_exactness());
        assert!(res.periodicity().is_some());
        let cx = complexity_estimate(&l, 8).unwrap();
        assert_eq!(cx.verdict, Verdict::Bounded);
        assert!(cx.periodic);
        assert!(cx.witness_holds());
    }

    #[test]
    fn residue_field_of_hypersurface() {
        let r = rq();
        let k = ModulePresentation::cyclic(&r, &[r.poly("x").unwrap(), r.poly("y").unwrap(), r.poly("z").unwrap()])
            .unwrap();
        let cx = complexity_estimate(&k, 8).unwrap();
        assert_eq!(cx.complexity(), Some(1));
        assert!(cx.periodic);
        assert_eq!(pd_ambient(&k), 3);
        let f = ModulePresentation::free_rank(&r, 2);
        assert_eq!(complexity_estimate(&f, 4).unwrap().verdict, Verdict::Zero);
    }
}
