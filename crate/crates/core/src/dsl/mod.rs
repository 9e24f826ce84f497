//! The `.dl` scenario language: parsing, printing, evaluation and reports.

pub mod ast;
mod eval;
mod lexer;
mod parser;
mod printer;
pub mod report;
pub mod sig;

use std::fmt;

pub use eval::{eval_scenario, EvalConfig};
pub use parser::parse_scenario;
pub use printer::print_scenario;
pub use report::{Report, StatementResult, Status};

/// Scenarios shipped with the tool, as `(file name, source)`.
pub const BUNDLE: &[(&str, &str)] = &[
    ("quadric_cone_ideal.dl", include_str!("../../scenarios/quadric_cone_ideal.dl")),
    ("depth_formula_gallery.dl", include_str!("../../scenarios/depth_formula_gallery.dl")),
    ("mcm_pairs.dl", include_str!("../../scenarios/mcm_pairs.dl")),
    ("knorrer_chain.dl", include_str!("../../scenarios/knorrer_chain.dl")),
    ("mu_tables.dl", include_str!("../../scenarios/mu_tables.dl")),
    ("reflexive_products.dl", include_str!("../../scenarios/reflexive_products.dl")),
    ("veronese_scan.dl", include_str!("../../scenarios/veronese_scan.dl")),
];

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub(crate) fn new(line: usize, col: usize, message: String, expected: Vec<String>) -> ParseError {
        ParseError {
            line,
            col,
            message,
            expected,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::ast::*;
    use super::*;

    #[test]
    fn parses_spec_lines() {
        let s = parse_scenario("ring R = poly(QQ,[x,y,z])/ideal(x*y - z^2)\n").unwrap();
        assert_eq!(s.stmts.len(), 1);
        let s = parse_scenario(
            "ring R = poly(QQ, [x, y, z]) / ideal(x*y - z^2)\nmodule I = ideal(R, x, y)\nassert depth(I) == 1\n",
        )
        .unwrap();
        assert_eq!(s.stmts.len(), 3);
        assert_eq!(s.stmts[2].line, 3);
        let s = parse_scenario("ring R = poly(GF(7), [x, y, z], lex)\nmodule M = coker(R, [x, z; z, y])").unwrap();
        match &s.stmts[1].kind {
            StmtKind::Module { expr, .. } => assert_eq!(
                expr.args[1],
                Arg::Matrix(vec![vec!["x".into(), "z".into()], vec!["z".into(), "y".into()]])
            ),
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn reports_positions_and_expectations() {
        let e = parse_scenario("ring R = poly(QQ, [x])\nmodule M = free(S, 1)\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 17));
        assert!(e.message.contains("not declared"));
        let e = parse_scenario("assert depth(R) = 1").unwrap_err();
        assert_eq!(e.line, 1);
        let e = parse_scenario("ring R = poly(QQ, [x])\nassert frob(R)\n").unwrap_err();
        assert!(e.expected.iter().any(|s| s == "depth"));
        let e = parse_scenario("ring R = poly(QQ, [x])\nring R = poly(QQ, [y])\n").unwrap_err();
        assert!(e.message.contains("already declared"));
        let e = parse_scenario("ring R = poly(QQ, [x])\nmodule M = free(R, 1)\nassert depth(M, M) == 1").unwrap_err();
        assert_eq!(e.expected, vec![")".to_string()]);
    }

    #[test]
    fn printer_round_trips() {
        for (_, src) in BUNDLE {
            let a = parse_scenario(src).unwrap();
            let b = parse_scenario(&print_scenario(&a)).unwrap();
            assert_eq!(a.shape(), b.shape());
        }
    }

    #[test]
    fn empty_and_failing_scenarios() {
        let r = eval_scenario(&parse_scenario("# nothing\n").unwrap(), "empty.dl", &EvalConfig::default());
        assert!(r.results.is_empty());
        assert_eq!(r.overall, Status::Pass);
        assert_eq!(r.exit_code(), 0);
        let src = "ring R = poly(QQ, [x, y])\nmodule F = free(R, 1)\nassert depth(F) == 1\nassert mu(F) == 1\n";
        let r = eval_scenario(&parse_scenario(src).unwrap(), "f.dl", &EvalConfig::default());
        assert_eq!(r.results[2].status, Status::Fail);
        assert_eq!(r.results[3].status, Status::Pass);
        assert_eq!(r.exit_code(), 1);
        assert!(r.to_json().contains("\"overall\": \"fail\""));
        assert!(r.timing_ms.statements.iter().all(|&t| t >= 0.0));
    }

    #[test]
    fn errors_are_recorded_and_evaluation_continues() {
        let src = "ring R = poly(QQ, [x, y])\nmodule M = ideal(R, x + y^2)\nmodule F = free(R, 1)\nassert free(F)\n";
        let r = eval_scenario(&parse_scenario(src).unwrap(), "e.dl", &EvalConfig::default());
        assert_eq!(r.results[1].status, Status::Error);
        assert_eq!(r.results[3].status, Status::Pass);
        assert_eq!(r.overall, Status::Fail);
    }

    #[test]
    fn json_is_stable_across_runs() {
        let (_, src) = BUNDLE[0];
        let s = parse_scenario(src).unwrap();
        let a = eval_scenario(&s, "x.dl", &EvalConfig::default());
        let b = eval_scenario(&s, "x.dl", &EvalConfig::default());
        assert_eq!(a.to_json_untimed(), b.to_json_untimed());
        let keys: Vec<&str> = ["\"version\"", "\"scenario\"", "\"field\"", "\"overall\"", "\"results\"", "\"timing_ms\""].to_vec();
        let json = a.to_json();
        let pos: Vec<usize> = keys.iter().map(|k| json.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }
}
