//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always show; exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use depthlab::dsl;
use depthlab::homological::{
    ar_test, cor25_equivalence_check, depth, depth_formula_check, ext, ext_depth_criterion, high_depth_pair,
    is_mcm, length_duality_check, residue_field, star_dual, syzygy, tor, Depth,
};
use depthlab::mf::{knorrer, knorrer_ext_transfer_check, mf_module, mf_validate, self_dual_tensor_depth, MatrixFactorization};
use depthlab::module::{tensor, ModulePresentation};
use depthlab::selftest;
use depthlab::veronese::{binomial, class_group_scan, class_rep, mu_formula_check, veronese_ring, VeroneseRing};
use depthlab::{Error, Field, MonomialOrder, PolyRing, Polynomial, Ring, RingPresentation};

type Outcome = Result<String, String>;

fn ensure(ok: bool, why: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why.into())
    }
}

fn rq() -> Ring {
    RingPresentation::parse(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex, &["x*y - z^2"]).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> ModulePresentation {
    let g: Vec<_> = gens.iter().map(|t| r.poly(t).unwrap()).collect();
    ModulePresentation::ideal(r, &g).unwrap()
}

fn cyclic(r: &Ring, gens: &[&str]) -> ModulePresentation {
    let g: Vec<_> = gens.iter().map(|t| r.poly(t).unwrap()).collect();
    ModulePresentation::cyclic(r, &g).unwrap()
}

fn free(r: &Ring, n: usize) -> ModulePresentation {
    ModulePresentation::free_rank(r, n)
}

fn e(x: Error) -> String {
    x.to_string()
}

fn quadric_cone_ideal() -> Outcome {
    let r = rq();
    let i = ideal(&r, &["x", "y"]);
    ensure(depth(&i) == Depth::Finite(1), format!("depth(I) = {:?}", depth(&i)))?;
    let id = star_dual(&i).map_err(e)?;
    ensure(id.is_free() && id.mu() == 1, "I* is not free of rank 1")?;
    let t = tensor(&i, &id).map_err(e)?;
    ensure(t.is_torsionfree().map_err(e)?, "I (x) I* has torsion")?;
    ensure(!t.is_reflexive().map_err(e)?, "I (x) I* is reflexive")?;
    let rr = free(&r, 1);
    ensure(ext(&i, &rr, 2).map_err(e)?.is_zero(), "Ext^2(I, R) != 0")?;
    ensure(!ext(&i, &rr, 1).map_err(e)?.is_zero(), "Ext^1(I, R) = 0")?;
    Ok("depth 1, I* = R, I (x) I* torsion-free not reflexive, Ext^2 = 0 and Ext^1 != 0".into())
}

fn depth_formula_gallery() -> Outcome {
    let r = RingPresentation::parse(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex, &["x*y"]).unwrap();
    let a = cyclic(&r, &["x"]);
    let b = cyclic(&r, &["y"]);
    let rep = depth_formula_check(&a, &b, 4).map_err(e)?;
    let depths = [rep.depth_m, rep.depth_n, rep.depth_r, rep.depth_mn];
    let want = [1, 1, 1, 0].map(Depth::Finite);
    ensure(!rep.holds && depths == want, format!("holds {} with depths {depths:?}", rep.holds))?;
    ensure(tor(&a, &b, 1).map_err(e)?.is_zero(), "Tor_1 != 0")?;
    // Hand resolution ... -> R -y-> R -x-> R tensored with R/(y) = k[x].
    let t2 = tor(&a, &b, 2).map_err(e)?.length().map_err(e)?;
    ensure(t2 == 1, format!("length Tor_2 = {t2}"))?;
    let f = free(&r, 1);
    for (m, n) in [(&a, &f), (&f, &b), (&b, &f), (&f, &f)] {
        ensure(depth_formula_check(m, n, 4).map_err(e)?.holds, "free partner fails")?;
    }
    Ok("holds false at depths (1,1,1,0), Tor_1 = 0, length Tor_2 = 1, 4 free pairs hold".into())
}

fn metamorphic_ext_criterion() -> Outcome {
    let r = rq();
    let lq = ideal(&r, &["x", "z"]);
    let mut ms = vec![free(&r, 1), lq.clone(), ideal(&r, &["x", "y"]), ideal(&r, &["x", "y", "z"])];
    let mut ns = vec![free(&r, 1), lq.clone(), syzygy(&lq, 1).map_err(e)?];
    let mut pairs: Vec<(ModulePresentation, ModulePresentation)> = Vec::new();
    for m in &ms {
        for n in &ns {
            pairs.push((m.clone(), n.clone()));
        }
    }
    let v = veronese_ring(3, 2).map_err(e)?;
    let l = class_rep(&v, 1).map_err(e)?.module;
    ms = vec![free(&v.ring, 1), l.clone()];
    ns = vec![free(&v.ring, 1), l];
    for m in &ms {
        for n in &ns {
            pairs.push((m.clone(), n.clone()));
        }
    }
    let (mut total, mut agree) = (0, 0);
    let mut bad = Vec::new();
    for (m, n) in &pairs {
        let dm = match depth(m) {
            Depth::Finite(k) => k,
            Depth::Infinite => continue,
        };
        for k in 1..=dm.min(m.ring().dim()) {
            let rep = ext_depth_criterion(m, n, k).map_err(e)?;
            if !rep.within_hypotheses {
                continue;
            }
            total += 1;
            if rep.agree {
                agree += 1;
            } else {
                bad.push(format!("n={k} depth {:?}", rep.depth_mn));
            }
        }
    }
    ensure(total >= 20, format!("only {total} triples"))?;
    ensure(agree == total, format!("{agree}/{total} agree; {}", bad.join(", ")))?;
    Ok(format!("{agree}/{total} triples agree"))
}

fn length_duality() -> Outcome {
    let r = rq();
    let lq = ideal(&r, &["x", "z"]);
    let ms = [lq.clone(), ideal(&r, &["x", "y"]), ideal(&r, &["x", "y", "z"]), residue_field(&r)];
    let ns = [free(&r, 1), lq.clone(), syzygy(&lq, 1).map_err(e)?];
    let (mut total, mut equal, mut skipped) = (0, 0, 0);
    for m in &ms {
        for n in &ns {
            for i in 1..=2 {
                match length_duality_check(m, n, i) {
                    Ok(rep) => {
                        total += 1;
                        if rep.equal {
                            equal += 1;
                        }
                    }
                    Err(Error::HypothesisViolated(_)) => skipped += 1,
                    Err(x) => return Err(e(x)),
                }
            }
        }
    }
    ensure(total > 0, "no triple with finite-length Tor")?;
    ensure(equal == total, format!("{equal}/{total} equal"))?;
    Ok(format!("{equal}/{total} lengths equal ({skipped} outside hypotheses)"))
}

fn four_conditions() -> Outcome {
    let r = rq();
    let lq = ideal(&r, &["x", "z"]);
    let mcm = [
        ("R", free(&r, 1)),
        ("R^2", free(&r, 2)),
        ("L", lq.clone()),
        ("L*", star_dual(&lq).map_err(e)?),
        ("syz L", syzygy(&lq, 1).map_err(e)?),
    ];
    let bound = 2 * r.dim() + 2;
    let mut n = 0;
    for (a, m) in &mcm {
        for (b, k) in &mcm {
            ensure(is_mcm(m) && is_mcm(k), format!("{a} or {b} is not MCM"))?;
            let rep = cor25_equivalence_check(m, k, bound).map_err(e)?;
            ensure(rep.consistent, format!("({a}, {b}) disagree: {rep:?}"))?;
            let free_pair = m.is_free() || k.is_free();
            ensure(!free_pair || rep.tensor_mcm, format!("free pair ({a}, {b}) is false"))?;
            if *a == "L" && *b == "L" {
                ensure(!rep.tensor_mcm, "(L, L) is true")?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} MCM pairs consistent through bound {bound}, (L, L) all false, free pairs all true"))
}

/// Exponent vectors of degree `deg` in `d` variables with first entry at least `lo`.
fn count_monomials(d: usize, deg: usize, lo: usize) -> usize {
    fn go(d: usize, deg: usize) -> usize {
        if d == 1 {
            return 1;
        }
        (0..=deg).map(|k| go(d - 1, deg - k)).sum()
    }
    (lo..=deg).map(|k| go(d - 1, deg - k)).sum()
}

fn mu_tables() -> Outcome {
    let mut flagged = Vec::new();
    let mut rows = 0;
    for (d, n) in [(2, 2), (2, 3), (3, 2), (3, 3)] {
        let v = veronese_ring(d, n).map_err(e)?;
        for i in 1..n {
            let rep = mu_formula_check(&v, i).map_err(e)?;
            let brute = count_monomials(d, n, i);
            let formula: u64 = binomial((n - i + d - 1) as u64, (d - 1) as u64).try_into().unwrap();
            ensure(
                rep.computed == brute && brute as u64 == formula && rep.agree,
                format!("V({d},{n}) i={i}: computed {} enumerated {brute} formula {formula}", rep.computed),
            )?;
            if let Some(f) = rep.factorial_reading {
                flagged.push(format!("V({d},{n}) i={i}: {f} vs {formula}"));
            }
            rows += 1;
        }
    }
    let v = veronese_ring(3, 3).map_err(e)?;
    ensure(class_rep(&v, 1).map_err(e)?.module.mu() == 6, "mu on V(3,3) i=1 is not 6")?;
    Ok(format!("{rows} rows match; factorial reading differs at {}", flagged.join("; ")))
}

fn class_scans() -> Outcome {
    let mut out = Vec::new();
    for (d, n) in [(2, 2), (3, 2), (2, 3)] {
        let v = veronese_ring(d, n).map_err(e)?;
        let scan = class_group_scan(&v, 6).map_err(e)?;
        ensure(scan.consistent, format!("V({d},{n}) scan inconsistent: {:?}", scan.passing))?;
        let want = match scan.omega_index {
            Some(0) if d % n == 0 => vec![0],
            Some(w) if w != 0 && d % n != 0 => vec![0, w],
            other => return Err(format!("V({d},{n}) canonical class {other:?}")),
        };
        ensure(scan.passing == want, format!("V({d},{n}) passing {:?}", scan.passing))?;
        out.push(format!("V({d},{n}) {:?}", scan.passing));
    }
    Ok(out.join(", "))
}

fn knorrer_chain() -> Outcome {
    let s = PolyRing::new(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex).unwrap();
    let p = |t: &str| Polynomial::parse(&s, t).unwrap();
    let base = MatrixFactorization::new(p("x*y"), vec![vec![p("x")]], vec![vec![p("y")]]).map_err(e)?;
    let k = knorrer(&base, "u", "v").map_err(e)?;
    ensure(mf_validate(&k), "transform does not validate")?;
    ensure(k.f.to_string() == Polynomial::parse(&k.ambient, "x*y + u*v").unwrap().to_string(), "wrong potential")?;
    let t = knorrer_ext_transfer_check(&base, 5).map_err(e)?;
    let odd = |v: &[bool]| v.iter().enumerate().filter(|(j, _)| j % 2 == 0).all(|(_, z)| *z);
    ensure(odd(&t.base_vanishing) && odd(&t.transform_vanishing), format!("odd Ext: {t:?}"))?;
    let k2 = knorrer(&k, "s", "t").map_err(e)?;
    let d1 = self_dual_tensor_depth(&k).map_err(e)?;
    ensure(d1 == Depth::Finite(1), format!("depth(N (x) N*) = {d1:?}"))?;
    let n2 = mf_module(&k2).map_err(e)?;
    ensure(!n2.is_free(), "second transform is free")?;
    let r = rq();
    let lq = ideal(&r, &["x", "z"]);
    let samples = [
        lq.clone(),
        star_dual(&lq).map_err(e)?,
        syzygy(&lq, 1).map_err(e)?,
        lq.direct_sum(&free(&r, 1)).map_err(e)?,
        lq.shift(3),
    ];
    for m in &samples {
        ensure(is_mcm(m) && !m.is_free(), "sample is not a nonfree MCM module")?;
        let dd = depth(&tensor(m, &star_dual(m).map_err(e)?).map_err(e)?);
        ensure(dd == Depth::Finite(0), format!("depth(M (x) M*) = {dd:?} on Rq"))?;
    }
    Ok(format!(
        "product (xy+uv)Id, odd Ext vanishes through 5, depth(N (x) N*) = 1, {} samples on Rq at depth 0",
        samples.len()
    ))
}

fn ar_instances() -> Outcome {
    let r = rq();
    let v = veronese_ring(2, 2).map_err(e)?;
    let nonfree = [
        ("Lq", ideal(&r, &["x", "z"])),
        ("Iq", ideal(&r, &["x", "y"])),
        ("L(1) on V(2,2)", class_rep(&v, 1).map_err(e)?.module),
    ];
    for (name, m) in &nonfree {
        let rep = ar_test(m, 4).map_err(e)?;
        ensure(!rep.vanishes && !rep.is_free, format!("{name}: {rep:?}"))?;
    }
    let frees = [free(&r, 1), free(&r, 2), free(&v.ring, 1)];
    for m in &frees {
        let rep = ar_test(m, 4).map_err(e)?;
        ensure(rep.vanishes && rep.is_free, format!("free: {rep:?}"))?;
    }
    Ok(format!("{} nonfree fixtures nonvanishing, {} free fixtures vanish", nonfree.len(), frees.len()))
}

fn high_depth() -> Outcome {
    let v: VeroneseRing = veronese_ring(3, 2).map_err(e)?;
    let n = class_rep(&v, 1).map_err(e)?.module;
    let h = high_depth_pair(&n).map_err(e)?;
    let target = Depth::Finite(v.ring.dim() - 2);
    ensure(!h.m_free, "M is free")?;
    ensure(h.depth_achieved >= target, format!("depth(M (x) N) = {:?}", h.depth_achieved))?;
    Ok(format!("M nonfree with mu {}, depth(M (x) N) = {:?}", h.m.mu(), h.depth_achieved))
}

fn engine_suites() -> Outcome {
    let results = selftest::run_all(2024);
    let mut parts = Vec::new();
    for s in &results {
        ensure(s.passed(), format!("{}: {}", s.name, s.failures.join("; ")))?;
        parts.push(format!("{} {}", s.name, s.cases));
    }
    Ok(parts.join(", "))
}

fn strip_timing(json: &str) -> &str {
    json.find("\"timing_ms\"").map_or(json, |k| &json[..k])
}

fn cli() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_depthlab");
    let dir = std::env::temp_dir().join(format!("depthlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|x| x.to_string())?;
    let status = |args: &[&std::ffi::OsStr]| -> Result<i32, String> {
        let out = Command::new(bin).args(args).output().map_err(|x| x.to_string())?;
        Ok(out.status.code().unwrap_or(-1))
    };
    let copied = status(&["examples".as_ref(), "--copy".as_ref(), dir.as_os_str()])?;
    ensure(copied == 0, "examples --copy failed")?;
    for (name, _) in dsl::BUNDLE {
        let file = dir.join(name);
        let mut texts = Vec::new();
        for k in 0..2 {
            let json = dir.join(format!("{name}.{k}.json"));
            let code = status(&["run".as_ref(), file.as_os_str(), "--json".as_ref(), json.as_os_str()])?;
            ensure(code == 0, format!("{name} exits {code}"))?;
            texts.push(std::fs::read_to_string(&json).map_err(|x| x.to_string())?);
        }
        ensure(strip_timing(&texts[0]) == strip_timing(&texts[1]), format!("{name} JSON differs"))?;
    }
    let failing = dir.join("failing.dl");
    std::fs::write(&failing, "ring R = poly(QQ, [x, y])\nassert depth(R) == 5\n").map_err(|x| x.to_string())?;
    let code = status(&["run".as_ref(), failing.as_os_str()])?;
    ensure(code == 1, format!("failing assert exits {code}"))?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(Path::new(bin).exists(), "binary missing")?;
    Ok(format!("{} scenarios pass with stable JSON, failing assert exits 1", dsl::BUNDLE.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("quadric cone ideal", quadric_cone_ideal),
        ("depth formula gallery", depth_formula_gallery),
        ("Ext criterion metamorphic", metamorphic_ext_criterion),
        ("length duality", length_duality),
        ("four MCM conditions", four_conditions),
        ("class generator counts", mu_tables),
        ("semidualizing class scans", class_scans),
        ("Knorrer chain", knorrer_chain),
        ("AR instances", ar_instances),
        ("high depth pair", high_depth),
        ("engine suites", engine_suites),
        ("CLI", cli),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name} ({secs:.1}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({secs:.1}s): {why}", k + 1);
            }
        }
    }
    println!("{}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
