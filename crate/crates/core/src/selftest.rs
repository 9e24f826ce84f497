//! Randomized invariant suites run by `depthlab selftest`. Every suite is
//! seeded, so a failure can be replayed.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::groebner::{groebner, normal_form, syzygies, FreeElement};
use crate::homological::{depth, depth_via_ext};
use crate::module::ModulePresentation;
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial};
use crate::resolution::resolve;
use crate::ring::{Ring, RingPresentation};
use crate::scalar::{Field, Scalar};

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run_all(seed: u64) -> Vec<SuiteResult> {
    vec![
        gb_uniqueness(seed, 12),
        buchberger_criterion(seed + 1, 12),
        resolutions(seed + 2, 10),
        auslander_buchsbaum(seed + 3, 10),
        syzygy_completeness(seed + 4, 10),
    ]
}

fn exponents(nvars: usize, d: u16) -> Vec<Vec<u16>> {
    if nvars == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .rev()
        .flat_map(|e| {
            exponents(nvars - 1, d - e).into_iter().map(move |mut r| {
                r.insert(0, e);
                r
            })
        })
        .collect()
}

fn random_form(rng: &mut ChaCha8Rng, s: &Arc<PolyRing>, d: u16, terms: usize) -> Polynomial {
    let monos = exponents(s.nvars(), d);
    let f = s.field();
    let chosen: Vec<(Monomial, Scalar)> = monos
        .choose_multiple(rng, terms.min(monos.len()))
        .map(|e| {
            let c = rng.gen_range(1..=4) * if rng.gen_bool(0.5) { -1 } else { 1 };
            (Monomial::from_exponents(e), f.from_i64(c))
        })
        .collect();
    Polynomial::from_terms(s, chosen)
}

fn random_gens(rng: &mut ChaCha8Rng, s: &Arc<PolyRing>, count: usize, max_deg: u16) -> Vec<Polynomial> {
    (0..count)
        .map(|_| loop {
            let d = rng.gen_range(1..=max_deg);
            let t = rng.gen_range(1..=3);
            let p = random_form(rng, s, d, t);
            if !p.is_zero() {
                break p;
            }
        })
        .collect()
}

fn random_ring(rng: &mut ChaCha8Rng) -> Arc<PolyRing> {
    let field = if rng.gen_bool(0.3) { Field::prime(101).unwrap() } else { Field::Rationals };
    let order = if rng.gen_bool(0.3) { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
    PolyRing::new(field, &["x", "y", "z"], order).unwrap()
}

fn sorted_strings(g: &[FreeElement]) -> Vec<String> {
    let mut v: Vec<String> = g
        .iter()
        .map(|e| e.coords().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
        .collect();
    v.sort();
    v
}

fn as_elements(gens: &[Polynomial]) -> Vec<FreeElement> {
    gens.iter().map(|g| FreeElement::from_polys(vec![g.clone()]).unwrap()).collect()
}

/// Permuting and rescaling the generators leaves the reduced basis unchanged.
pub fn gb_uniqueness(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let s = random_ring(&mut rng);
        let n = rng.gen_range(2..=4);
        let gens = random_gens(&mut rng, &s, n, 3);
        let g1 = groebner(&s, &as_elements(&gens), 1).unwrap();
        let mut other = gens.clone();
        other.shuffle(&mut rng);
        let other: Vec<Polynomial> = other
            .iter()
            .map(|g| g.scale(&s.field().from_i64(rng.gen_range(2..=7))))
            .collect();
        let g2 = groebner(&s, &as_elements(&other), 1).unwrap();
        if sorted_strings(g1.elements()) != sorted_strings(g2.elements()) {
            failures.push(format!("case {case}: bases differ for {:?}", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>()));
        }
        if !g1.is_reduced() || !g2.is_reduced() {
            failures.push(format!("case {case}: basis not reduced"));
        }
    }
    SuiteResult {
        name: "reduced basis uniqueness",
        cases,
        failures,
    }
}

/// S-pairs reduce to zero and the input lies in the span of the basis.
pub fn buchberger_criterion(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let s = random_ring(&mut rng);
        let rank = rng.gen_range(1..=2);
        let n = rng.gen_range(2..=4);
        let elems: Vec<FreeElement> = (0..n)
            .map(|_| {
                let d = rng.gen_range(1..=2);
                let coords = (0..rank)
                    .map(|_| if rng.gen_bool(0.3) { Polynomial::zero(&s) } else { random_form(&mut rng, &s, d, 2) })
                    .collect();
                FreeElement::new(&s, coords).unwrap()
            })
            .collect();
        let g = groebner(&s, &elems, rank).unwrap();
        if !g.s_pairs_reduce_to_zero() {
            failures.push(format!("case {case}: an S-pair has nonzero remainder"));
        }
        if elems.iter().any(|e| !normal_form(e, &g).unwrap().is_zero()) {
            failures.push(format!("case {case}: a generator has nonzero normal form"));
        }
    }
    SuiteResult {
        name: "Buchberger criterion",
        cases,
        failures,
    }
}

fn quadric_cone() -> Ring {
    RingPresentation::parse(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex, &["x*y - z^2"]).unwrap()
}

/// A cyclic module or a cokernel of linear forms over a random ring.
fn random_module(rng: &mut ChaCha8Rng) -> ModulePresentation {
    let ring = match rng.gen_range(0..3) {
        0 => quadric_cone(),
        1 => RingPresentation::new(PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap(), vec![]).unwrap(),
        _ => {
            let s = PolyRing::new(Field::prime(101).unwrap(), &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
            let f = random_form(rng, &s, 2, 3);
            RingPresentation::new(s, vec![f]).unwrap()
        }
    };
    let s = ring.ambient().clone();
    if rng.gen_bool(0.5) {
        let n = rng.gen_range(1..=3);
        let gens: Vec<Polynomial> = random_gens(rng, &s, n, 2).iter().map(|g| ring.reduce(g)).collect();
        ModulePresentation::cyclic(&ring, &gens).unwrap()
    } else {
        let cols = rng.gen_range(1..=3);
        let m: Vec<Vec<Polynomial>> = (0..2).map(|_| (0..cols).map(|_| random_form(rng, &s, 1, 2)).collect()).collect();
        ModulePresentation::from_matrix(&ring, vec![0, 0], &m).unwrap()
    }
}

/// `d∘d = 0`, interior exactness and minimality of every resolution built.
pub fn resolutions(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let m = random_module(&mut rng);
        let r = resolve(&m, 4);
        if !r.composites_vanish() {
            failures.push(format!("case {case}: d∘d is not zero"));
        }
        if !r.verify_exactness() {
            failures.push(format!("case {case}: resolution is not exact"));
        }
        if !r.is_minimal() {
            failures.push(format!("case {case}: a differential has a unit entry"));
        }
    }
    SuiteResult {
        name: "resolutions",
        cases,
        failures,
    }
}

/// Depth from projective dimension against the first nonvanishing `Ext(k, M)`.
pub fn auslander_buchsbaum(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let m = random_module(&mut rng);
        let a = depth(&m);
        match depth_via_ext(&m) {
            Ok(b) if a == b => {}
            Ok(b) => failures.push(format!("case {case}: depth {a} but Ext gives {b}")),
            Err(e) => failures.push(format!("case {case}: {e}")),
        }
    }
    SuiteResult {
        name: "Auslander-Buchsbaum",
        cases,
        failures,
    }
}

/// Rank of a list of coefficient rows by plain elimination.
fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map(|x| x.len()).unwrap_or(0);
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().unwrap();
        let pivot: Vec<Scalar> = rows[r].iter().map(|x| x * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = &*x - &(&k * y);
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

fn coefficients(p: &Polynomial, basis: &[Vec<u16>]) -> Vec<Scalar> {
    let f = p.ring().field();
    basis
        .iter()
        .map(|e| {
            p.terms()
                .find(|(m, _)| m.exponents() == e.as_slice())
                .map(|(_, c)| c.clone())
                .unwrap_or_else(|| f.zero())
        })
        .collect()
}

/// Computed syzygies are syzygies, and in each degree they span the full
/// kernel of `(c_i) -> sum c_i f_i` found by linear algebra.
pub fn syzygy_completeness(seed: u64, cases: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let s = PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let n = rng.gen_range(2..=4);
        let gens = random_gens(&mut rng, &s, n, 2);
        let degs: Vec<i64> = gens.iter().map(|g| g.homogeneous_degree().unwrap()).collect();
        let syz = syzygies(&s, &as_elements(&gens)).unwrap();
        for z in &syz {
            let mut total = Polynomial::zero(&s);
            for (c, g) in z.coords().iter().zip(&gens) {
                total = total.add(&c.mul(g).unwrap()).unwrap();
            }
            if !total.is_zero() {
                failures.push(format!("case {case}: a computed syzygy does not vanish"));
            }
        }
        // Degree of a syzygy: the degree of any nonzero c_i f_i.
        let syz_deg = |z: &FreeElement| {
            z.coords()
                .iter()
                .zip(&degs)
                .find(|(c, _)| !c.is_zero())
                .map(|(c, d)| c.homogeneous_degree().unwrap() + d)
        };
        let top = degs.iter().max().unwrap() + 3;
        for dd in 0..=top {
            // Oracle: nullity of the coefficient matrix in degree dd.
            let target: Vec<Vec<u16>> = exponents(3, dd as u16);
            let mut rows = Vec::new();
            let mut unknowns = 0;
            for (g, &d) in gens.iter().zip(&degs) {
                if dd < d {
                    continue;
                }
                for e in exponents(3, (dd - d) as u16) {
                    let m = Polynomial::term(&s, s.field().one(), Monomial::from_exponents(&e));
                    rows.push(coefficients(&m.mul(g).unwrap(), &target));
                    unknowns += 1;
                }
            }
            let nullity = unknowns - rank(rows);
            // Span of monomial multiples of the computed generators.
            let mut span = Vec::new();
            for z in &syz {
                let Some(zd) = syz_deg(z) else { continue };
                if zd > dd {
                    continue;
                }
                for e in exponents(3, (dd - zd) as u16) {
                    let m = Polynomial::term(&s, s.field().one(), Monomial::from_exponents(&e));
                    let mut row = Vec::new();
                    for (c, &d) in z.coords().iter().zip(&degs) {
                        if dd >= d {
                            row.extend(coefficients(&m.mul(c).unwrap(), &exponents(3, (dd - d) as u16)));
                        }
                    }
                    span.push(row);
                }
            }
            let got = rank(span);
            if got != nullity {
                failures.push(format!("case {case}, degree {dd}: syzygies span {got}, kernel has dimension {nullity}"));
            }
        }
    }
    SuiteResult {
        name: "syzygy completeness",
        cases,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_seeds() {
        for r in run_all(7) {
            assert!(r.passed(), "{}: {:?}", r.name, r.failures);
        }
    }
}
