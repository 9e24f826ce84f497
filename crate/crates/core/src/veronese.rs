//! Veronese subrings `k[x_1..x_d]^(n)`, their divisor classes `L^(i)` and
//! checks built on them.

use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::eliminate;
use crate::homological::{canonical_module, ext, iso_witness, semidualizing_test};
use crate::module::{hom, tensor, ModulePresentation};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::ring::{Ring, RingFlags, RingPresentation};
use crate::scalar::Field;

pub const DEFAULT_VARIABLE_CAP: usize = 15;

#[derive(Clone, Debug)]
pub struct VeroneseRing {
    pub d: usize,
    pub n: usize,
    pub ring: Ring,
    /// Exponent vector (in `d` variables) of each presentation variable.
    pub monomials: Vec<Vec<u16>>,
}

#[derive(Clone, Debug)]
pub struct ClassRep {
    pub index: usize,
    pub module: ModulePresentation,
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut r = BigUint::from(1u32);
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

fn count(n: usize, d: usize) -> usize {
    // degree-n monomials in d variables
    let b = binomial((n + d - 1) as u64, (d - 1) as u64);
    b.try_into().unwrap_or(usize::MAX)
}

/// Degree-`n` exponent vectors in `d` variables, lex descending.
fn monomials_of_degree(d: usize, n: usize) -> Vec<Vec<u16>> {
    fn rec(d: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() + 1 == d {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e);
            rec(d, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, n as u16, &mut Vec::new(), &mut out);
    out
}

fn variable_names(k: usize) -> Vec<String> {
    if k <= 26 {
        (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        (0..k).map(|i| format!("y{i}")).collect()
    }
}

pub fn veronese_ring(d: usize, n: usize) -> Result<VeroneseRing> {
    veronese_ring_with(Field::Rationals, d, n, DEFAULT_VARIABLE_CAP)
}

/// Toric presentation by eliminating the `d` parameters from
/// `y_m - t^m`, checked by substitution.
pub fn veronese_ring_with(field: Field, d: usize, n: usize, cap: usize) -> Result<VeroneseRing> {
    if d == 0 || n < 2 {
        return Err(Error::IndexRange(format!("need d >= 1 and n >= 2, got d={d}, n={n}")));
    }
    let k = count(n, d);
    if k > cap {
        return Err(Error::SizeCap(format!("{k} variables exceed the cap of {cap}")));
    }
    let monomials = monomials_of_degree(d, n);
    let names = variable_names(k);
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let target = PolyRing::new(field, &name_refs, MonomialOrder::Grevlex)?;

    let tnames: Vec<String> = (0..d).map(|i| format!("t{i}")).collect();
    let mut all: Vec<&str> = tnames.iter().map(|s| s.as_str()).collect();
    all.extend(name_refs.iter());
    let mut weights = vec![1u32; d];
    weights.extend(std::iter::repeat(n as u32).take(k));
    let big = PolyRing::weighted(field, &all, &weights, MonomialOrder::Grevlex)?;
    let one = field.one();
    let ideal: Vec<Polynomial> = monomials
        .iter()
        .enumerate()
        .map(|(j, e)| {
            let mut ex = e.clone();
            ex.extend(std::iter::repeat(0).take(k));
            let t = Polynomial::term(&big, one.clone(), Monomial::from_exponents(&ex));
            Polynomial::var(&big, d + j).sub(&t)
        })
        .collect::<Result<_>>()?;
    let keep: Vec<usize> = (d..d + k).collect();
    let toric = eliminate(&big, &ideal, &keep)?;
    let map: Vec<usize> = (0..d + k).map(|i| i.saturating_sub(d)).collect();
    let gens: Vec<Polynomial> = toric.iter().map(|p| p.remap(&target, &map)).collect();

    let params = PolyRing::new(field, &tnames.iter().map(|s| s.as_str()).collect::<Vec<_>>(), MonomialOrder::Grevlex)?;
    let images: Vec<Polynomial> = monomials
        .iter()
        .map(|e| Polynomial::term(&params, one.clone(), Monomial::from_exponents(e)))
        .collect();
    for g in &gens {
        if !g.substitute(&params, &images)?.is_zero() {
            return Err(Error::Other(format!("toric generator {g} does not vanish")));
        }
    }
    let ring = RingPresentation::new(target, gens)?
        .with_flags(RingFlags {
            domain: Some(true),
            cohen_macaulay: Some(true),
            isolated_singularity: Some(true),
            ..RingFlags::default()
        })
        .with_label(&format!("V({d},{n})"));
    Ok(VeroneseRing { d, n, ring, monomials })
}

impl VeroneseRing {
    pub fn dim(&self) -> usize {
        self.ring.dim()
    }
}

/// `L^(i)`: the ideal of the variables whose monomial is divisible by
/// `x_1^i`.
pub fn class_rep(v: &VeroneseRing, i: usize) -> Result<ClassRep> {
    if i >= v.n {
        return Err(Error::IndexRange(format!("class index {i} not below {}", v.n)));
    }
    let module = if i == 0 {
        ModulePresentation::free_rank(&v.ring, 1)
    } else {
        let gens: Vec<Polynomial> = v
            .monomials
            .iter()
            .enumerate()
            .filter(|(_, e)| e[0] as usize >= i)
            .map(|(j, _)| v.ring.var(j))
            .collect();
        ModulePresentation::ideal(&v.ring, &gens)?
    };
    Ok(ClassRep { index: i, module })
}

#[derive(Clone, Debug, Serialize)]
pub struct MuReport {
    pub computed: usize,
    /// Monomials of degree `n - i`.
    pub predicted: u64,
    pub agree: bool,
    /// `(n+d-i-1)!/(d-1)!`, reported when it differs from `predicted`.
    pub factorial_reading: Option<u64>,
}

fn factorial_ratio(top: u64, bottom: u64) -> BigUint {
    (bottom + 1..=top).fold(BigUint::from(1u32), |a, k| a * BigUint::from(k))
}

pub fn mu_formula_check(v: &VeroneseRing, i: usize) -> Result<MuReport> {
    if i == 0 || i >= v.n {
        return Err(Error::IndexRange(format!("need 1 <= i <= {}", v.n - 1)));
    }
    let (n, d, i64_) = (v.n as u64, v.d as u64, i as u64);
    let computed = class_rep(v, i)?.module.mu();
    let predicted: u64 = binomial(n - i64_ + d - 1, d - 1).try_into().unwrap_or(u64::MAX);
    let fact: u64 = factorial_ratio(n + d - i64_ - 1, d - 1).try_into().unwrap_or(u64::MAX);
    Ok(MuReport {
        computed,
        predicted,
        agree: computed as u64 == predicted,
        factorial_reading: (fact != predicted).then_some(fact),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ReflexiveProductReport {
    pub i: usize,
    pub j: usize,
    pub reflexive: bool,
    /// Not reflexive unless one of the classes is trivial.
    pub consistent: bool,
}

pub fn reflexive_product_test(v: &VeroneseRing, i: usize, j: usize) -> Result<ReflexiveProductReport> {
    let a = class_rep(v, i)?;
    let b = class_rep(v, j)?;
    let reflexive = tensor(&a.module, &b.module)?.is_reflexive()?;
    Ok(ReflexiveProductReport {
        i,
        j,
        reflexive,
        consistent: !reflexive || i == 0 || j == 0,
    })
}

/// Sweeps `0 < i <= j < n` with `i + j = n + h`, `h >= 0`, and confirms
/// that neither `binom(N, n-i+d-1) = binom(N, n-h+d-1)` (with
/// `N = n-h+2(d-1)`) nor `mu(L^i) mu(L^j) = mu(L^h)` has a solution.
pub fn binomial_unimodality_check(d: usize, n: usize) -> bool {
    if d == 0 || n < 2 {
        return true;
    }
    let (d, n) = (d as u64, n as u64);
    let mu = |i: u64| binomial(n - i + d - 1, d - 1);
    for i in 1..n {
        for j in i..n {
            if i + j < n {
                continue;
            }
            let h = i + j - n;
            let big_n = n - h + 2 * (d - 1);
            let n1 = n - i + d - 1;
            let n2 = n - h + d - 1;
            if binomial(big_n, n1) == binomial(big_n, n2) {
                return false;
            }
            let mu_h = if h == 0 { BigUint::from(1u32) } else { mu(h) };
            if mu(i) * mu(j) == mu_h {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassScan {
    pub passing: Vec<usize>,
    pub results: Vec<(usize, bool)>,
    /// Class of the canonical module, if a witness was found.
    pub omega_index: Option<usize>,
    pub omega_free: bool,
    /// Passing set equals `{0}` or `{0, omega_index}`.
    pub consistent: bool,
}

pub fn canonical_index(v: &VeroneseRing) -> Result<(Option<usize>, bool)> {
    let w = canonical_module(&v.ring)?;
    if w.is_free() {
        return Ok((Some(0), true));
    }
    for i in 1..v.n {
        if iso_witness(&class_rep(v, i)?.module, &w)?.found() {
            return Ok((Some(i), false));
        }
    }
    Ok((None, false))
}

pub fn class_group_scan(v: &VeroneseRing, bound: usize) -> Result<ClassScan> {
    let results = (0..v.n)
        .map(|i| Ok((i, semidualizing_test(&class_rep(v, i)?.module, bound)?.semidualizing)))
        .collect::<Result<Vec<_>>>()?;
    let passing: Vec<usize> = results.iter().filter(|r| r.1).map(|r| r.0).collect();
    let (omega_index, omega_free) = canonical_index(v)?;
    let mut expected = vec![0];
    if let Some(w) = omega_index.filter(|&w| w != 0) {
        expected.push(w);
    }
    let consistent = omega_index.is_some() && passing == expected;
    Ok(ClassScan {
        passing,
        results,
        omega_index,
        omega_free,
        consistent,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HomClassReport {
    pub i: usize,
    pub j: usize,
    /// `(j - i) mod n`.
    pub expected: usize,
    pub rank: usize,
    pub reflexive: bool,
    pub witnessed: bool,
    pub consistent: bool,
}

/// `Hom(L^(i), L^(j))` against `L^((j - i) mod n)`.
pub fn hom_class_check(v: &VeroneseRing, i: usize, j: usize) -> Result<HomClassReport> {
    let a = class_rep(v, i)?;
    let b = class_rep(v, j)?;
    let expected = (j + v.n - i) % v.n;
    let h = hom(&a.module, &b.module)?.module.minimize();
    let rank = h.rank()?;
    let reflexive = h.is_reflexive()?;
    let witnessed = iso_witness(&h, &class_rep(v, expected)?.module)?.found();
    Ok(HomClassReport {
        i,
        j,
        expected,
        rank,
        reflexive,
        witnessed,
        consistent: rank == 1 && reflexive && witnessed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub top_degree: i64,
    /// Sum of the Hilbert functions of all `L^(i)`, degree by degree.
    pub summed: Vec<i64>,
    /// Monomials of the ambient ring with degree in `(kn - n, kn]`.
    pub ambient: Vec<i64>,
    pub agree: bool,
}

/// Hilbert functions of `L^(0), ..., L^(n-1)` add up to that of the
/// polynomial ring, grouped in windows of `n` consecutive degrees.
pub fn decomposition_check(v: &VeroneseRing, top: i64) -> Result<DecompositionReport> {
    let mut summed = vec![0i64; top as usize + 1];
    for i in 0..v.n {
        let l = class_rep(v, i)?.module;
        for (k, h) in l.hilbert_function(0, top).into_iter().enumerate() {
            summed[k] += h;
        }
    }
    let d = v.d as i64;
    let n = v.n as i64;
    let ambient: Vec<i64> = (0..=top)
        .map(|k| {
            (k * n - n + 1..=k * n)
                .filter(|&j| j >= 0)
                .map(|j| crate::hilbert::binomial(j + d - 1, d - 1))
                .sum()
        })
        .collect();
    Ok(DecompositionReport {
        top_degree: top,
        agree: summed == ambient,
        summed,
        ambient,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PairScan {
    /// Pairs `(i, j)` with `Ext^(d-1)` and `Ext^d` of `(L^(i), L^(j))` zero.
    pub vanishing: Vec<(usize, usize)>,
    pub omega_index: Option<usize>,
    /// Every vanishing pair has `i = 0` or `L^(j)` canonical.
    pub consistent: bool,
}

pub fn ext_pair_scan(v: &VeroneseRing) -> Result<PairScan> {
    let (omega_index, _) = canonical_index(v)?;
    let d = v.dim();
    let mut vanishing = Vec::new();
    for i in 0..v.n {
        let a = class_rep(v, i)?.module;
        for j in 0..v.n {
            let b = class_rep(v, j)?.module;
            let lo = if d == 0 { true } else { ext(&a, &b, d - 1)?.is_zero() };
            if lo && ext(&a, &b, d)?.is_zero() {
                vanishing.push((i, j));
            }
        }
    }
    let consistent = vanishing
        .iter()
        .all(|&(i, j)| i == 0 || Some(j) == omega_index);
    Ok(PairScan {
        vanishing,
        omega_index,
        consistent,
    })
}

pub fn ambient_of(v: &VeroneseRing) -> Arc<PolyRing> {
    v.ring.ambient().clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_veronese_presentations() {
        let v = veronese_ring(2, 2).unwrap();
        assert_eq!(v.ring.nvars(), 3);
        assert_eq!(v.ring.basis().len(), 1);
        assert_eq!(v.ring.basis()[0], v.ring.poly("b^2 - a*c").unwrap());
        assert_eq!(v.dim(), 2);
        let c = veronese_ring(2, 3).unwrap();
        assert_eq!(c.ring.nvars(), 4);
        let mut want: Vec<Polynomial> = ["a*c - b^2", "a*d - b*c", "b*d - c^2"]
            .iter()
            .map(|t| c.ring.poly(t).unwrap())
            .collect();
        let mut got = c.ring.basis().to_vec();
        let key = |p: &Polynomial| p.to_string();
        want.sort_by_key(key);
        got.sort_by_key(key);
        let norm = |p: &Polynomial| {
            let lc = p.lead().unwrap().1.clone();
            p.scale(&lc.inv().unwrap())
        };
        let want: Vec<_> = want.iter().map(norm).collect();
        let got: Vec<_> = got.iter().map(norm).collect();
        for w in &want {
            assert!(got.contains(w), "{w} missing from {got:?}");
        }
        let line = veronese_ring(1, 4).unwrap();
        assert!(line.ring.is_polynomial_ring());
        assert!(matches!(veronese_ring(4, 4), Err(Error::SizeCap(_))));
    }

    #[test]
    fn class_reps_and_mu() {
        let v = veronese_ring(2, 3).unwrap();
        let l2 = class_rep(&v, 2).unwrap();
        assert_eq!(l2.module.mu(), 2);
        assert!(class_rep(&v, 0).unwrap().module.is_free());
        let m = mu_formula_check(&v, 1).unwrap();
        assert_eq!((m.computed, m.predicted, m.agree), (3, 3, true));
        assert_eq!(m.factorial_reading, Some(6));
        assert!(binomial_unimodality_check(2, 3));
        assert!(binomial_unimodality_check(5, 5));
    }

    #[test]
    fn reflexive_products() {
        let v = veronese_ring(2, 3).unwrap();
        let r = reflexive_product_test(&v, 1, 1).unwrap();
        assert!(!r.reflexive && r.consistent);
        let q = veronese_ring(2, 2).unwrap();
        let r = reflexive_product_test(&q, 1, 0).unwrap();
        assert!(r.reflexive && r.consistent);
    }
}

#[cfg(test)]
mod scan_tests {
    use super::*;

    #[test]
    fn scan_small_classes() {
        let s = class_group_scan(&veronese_ring(2, 2).unwrap(), 6).unwrap();
        assert_eq!(s.passing, vec![0]);
        assert!(s.omega_free && s.consistent);
        let s = class_group_scan(&veronese_ring(2, 3).unwrap(), 6).unwrap();
        assert_eq!(s.passing, vec![0, 2]);
        assert_eq!(s.omega_index, Some(2));
        assert!(s.consistent);
    }

    #[test]
    fn class_law_and_decomposition() {
        let v = veronese_ring(2, 3).unwrap();
        for (i, j) in [(1, 2), (2, 1), (1, 1), (0, 2)] {
            let r = hom_class_check(&v, i, j).unwrap();
            assert!(r.consistent, "{i} {j}: {r:?}");
        }
        for (d, n) in [(2, 2), (2, 3), (3, 2)] {
            let r = decomposition_check(&veronese_ring(d, n).unwrap(), 6).unwrap();
            assert!(r.agree, "{d} {n}: {r:?}");
        }
        let p = ext_pair_scan(&v).unwrap();
        assert!(p.consistent);
        assert!(p.vanishing.contains(&(1, 2)));
    }
}
