use proptest::prelude::*;

use depthlab::dsl::{parse_scenario, print_scenario};
use depthlab::groebner::{groebner, normal_form, FreeElement};
use depthlab::homological::{depth, depth_via_ext, tor};
use depthlab::module::ModulePresentation;
use depthlab::{Field, MonomialOrder, PolyRing, Polynomial, RingPresentation};

fn term() -> impl Strategy<Value = String> {
    (1i64..6, 0u8..3, 0u8..3, 0u8..3).prop_map(|(c, a, b, d)| {
        let mut parts = Vec::new();
        if c != 1 || a + b + d == 0 {
            parts.push(c.to_string());
        }
        for (v, e) in [("x", a), ("y", b), ("z", d)] {
            match e {
                0 => {}
                1 => parts.push(v.to_string()),
                _ => parts.push(format!("{v}^{e}")),
            }
        }
        parts.join("*")
    })
}

fn poly_text() -> impl Strategy<Value = String> {
    prop::collection::vec((term(), any::<bool>()), 1..4).prop_map(|ts| {
        let mut out = String::new();
        for (k, (t, neg)) in ts.into_iter().enumerate() {
            if k > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            out.push_str(&t);
        }
        out
    })
}

/// Homogeneous forms of degree 1 or 2 in x, y, z.
fn form() -> impl Strategy<Value = String> {
    let monos = ["x", "y", "z", "x^2", "x*y", "x*z", "y^2", "y*z", "z^2"];
    (any::<bool>(), prop::collection::vec((0usize..3, -3i64..4), 1..4)).prop_map(move |(quad, ts)| {
        let base = if quad { 3 } else { 0 };
        let mut out = String::new();
        for (i, c) in ts.into_iter().filter(|(_, c)| *c != 0) {
            let m = monos[base + i * if quad { 2 } else { 1 }];
            match (out.is_empty(), c < 0) {
                (true, true) => out.push('-'),
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
                (true, false) => {}
            }
            out.push_str(&format!("{}*{m}", c.abs()));
        }
        if out.is_empty() {
            monos[base].to_string()
        } else {
            out
        }
    })
}

fn stmt(k: usize) -> impl Strategy<Value = String> {
    let name = format!("M{k}");
    prop_oneof![
        (poly_text(), poly_text()).prop_map({
            let name = name.clone();
            move |(a, b)| format!("module {name} = ideal(R, {a}, {b})")
        }),
        (0i64..4).prop_map({
            let name = name.clone();
            move |r| format!("module {name} = free(R, {r})")
        }),
        (poly_text(), poly_text()).prop_map({
            let name = name.clone();
            move |(a, b)| format!("module {name} = coker(R, [{a}, {b}; {b}, {a}])")
        }),
        (0i64..5, prop::sample::select(vec!["==", "<=", ">="])).prop_map(|(n, op)| format!("assert depth(F) {op} {n}")),
        any::<bool>().prop_map(|b| format!("assert {}reflexive(F)", if b { "not " } else { "" })),
        prop::option::of(any::<bool>()).prop_map(|e| match e {
            Some(b) => format!("check cor25(F, F, 3) == {b}"),
            None => "check depth_formula(F, F)".to_string(),
        }),
        Just("print resolution(F, 3)".to_string()),
    ]
}

fn scenario() -> impl Strategy<Value = String> {
    (0usize..6).prop_flat_map(|n| {
        let stmts: Vec<_> = (0..n).map(stmt).collect();
        stmts.prop_map(|s| {
            let mut out = String::from("ring R = poly(QQ, [x, y, z]) / ideal(x*y - z^2)\nmodule F = free(R, 1)\n");
            for l in s {
                out.push_str(&l);
                out.push('\n');
            }
            out
        })
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_stable(src in scenario()) {
        let a = parse_scenario(&src).unwrap();
        let printed = print_scenario(&a);
        let b = parse_scenario(&printed).unwrap();
        prop_assert_eq!(a.shape(), b.shape());
        prop_assert_eq!(print_scenario(&b), printed);
    }

    #[test]
    fn parser_never_panics(src in "\\PC{0,80}") {
        let _ = parse_scenario(&src);
    }

    #[test]
    fn parser_never_panics_on_token_soup(
        toks in prop::collection::vec(
            prop::sample::select(vec![
                "ring", "module", "mf", "assert", "check", "print", "not", "R", "M", "=", "==", "<=",
                "(", ")", "[", "]", ",", ";", "/", "poly", "ideal", "QQ", "GF", "x", "y", "1", "-", "^",
                "*", "\n", "depth", "free", "coker", "inf", "true", "#",
            ]),
            0..40,
        )
    ) {
        let _ = parse_scenario(&toks.join(" "));
    }

    #[test]
    fn polynomial_parser_never_panics(src in "[xyz0-9+*^() -]{0,30}") {
        let s = PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let _ = Polynomial::parse(&s, &src);
    }

    #[test]
    fn polynomial_print_parse_round_trip(src in poly_text()) {
        let s = PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
        let p = Polynomial::parse(&s, &src).unwrap();
        let q = Polynomial::parse(&s, &p.to_string()).unwrap();
        prop_assert_eq!(p, q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduced_basis_invariants(gens in prop::collection::vec(form(), 1..4), lex in any::<bool>()) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
        let s = PolyRing::new(Field::Rationals, &["x", "y", "z"], order).unwrap();
        let elems: Vec<FreeElement> = gens
            .iter()
            .map(|t| FreeElement::from_polys(vec![Polynomial::parse(&s, t).unwrap()]).unwrap())
            .collect();
        let g = groebner(&s, &elems, 1).unwrap();
        prop_assert!(g.is_reduced());
        prop_assert!(g.s_pairs_reduce_to_zero());
        for e in &elems {
            prop_assert!(normal_form(e, &g).unwrap().is_zero());
        }
        let again = groebner(&s, g.elements(), 1).unwrap();
        let show = |b: &[FreeElement]| b.iter().map(|e| e.coords()[0].to_string()).collect::<Vec<_>>();
        prop_assert_eq!(show(g.elements()), show(again.elements()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn tor_is_balanced_and_depths_agree(a in prop::collection::vec(form(), 1..3), b in prop::collection::vec(form(), 1..3)) {
        let r = RingPresentation::parse(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex, &["x*y - z^2"]).unwrap();
        let m = |g: &[String]| {
            let ps: Vec<_> = g.iter().map(|t| r.reduce(&r.poly(t).unwrap())).collect();
            ModulePresentation::cyclic(&r, &ps).unwrap()
        };
        let (ma, mb) = (m(&a), m(&b));
        for i in 0..=2 {
            let x = tor(&ma, &mb, i).unwrap();
            let y = tor(&mb, &ma, i).unwrap();
            prop_assert_eq!(x.hilbert_series(), y.hilbert_series());
        }
        prop_assert_eq!(depth(&ma), depth_via_ext(&ma).unwrap());
    }
}
