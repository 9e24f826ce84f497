use super::ast::*;

fn arg(a: &Arg) -> String {
    match a {
        Arg::Name(s) | Arg::Poly(s) => s.clone(),
        Arg::Int(n) => n.to_string(),
        Arg::Matrix(rows) => {
            let r: Vec<String> = rows.iter().map(|r| r.join(", ")).collect();
            format!("[{}]", r.join("; "))
        }
    }
}

pub fn call(c: &Call) -> String {
    let a: Vec<String> = c.args.iter().map(arg).collect();
    format!("{}({})", c.func, a.join(", "))
}

pub fn stmt(s: &StmtKind) -> String {
    match s {
        StmtKind::Ring { name, def } => match def {
            RingDef::Poly {
                field,
                vars,
                order,
                ideal,
            } => {
                let mut out = format!("ring {name} = poly({field}, [{}]", vars.join(", "));
                if let Some(o) = order {
                    out.push_str(&format!(", {o}"));
                }
                out.push(')');
                if !ideal.is_empty() {
                    out.push_str(&format!(" / ideal({})", ideal.join(", ")));
                }
                out
            }
            RingDef::Veronese { field, d, n } => format!("ring {name} = veronese({field}, {d}, {n})"),
        },
        StmtKind::Module { name, expr } => format!("module {name} = {}", call(expr)),
        StmtKind::Factorization { name, expr } => format!("mf {name} = {}", call(expr)),
        StmtKind::Assert(Cond::Pred { negated, call: c }) => {
            format!("assert {}{}", if *negated { "not " } else { "" }, call(c))
        }
        StmtKind::Assert(Cond::Compare { lhs, op, rhs }) => {
            let r = match rhs {
                Rhs::Int(n) => n.to_string(),
                Rhs::Inf => "inf".into(),
            };
            format!("assert {} {} {r}", call(lhs), op.symbol())
        }
        StmtKind::Check { call: c, expect } => match expect {
            Some(b) => format!("check {} == {b}", call(c)),
            None => format!("check {}", call(c)),
        },
        StmtKind::Print(c) => format!("print {}", call(c)),
    }
}

/// One statement per line, comments and blank lines dropped.
pub fn print_scenario(s: &Scenario) -> String {
    let mut out = String::new();
    for st in &s.stmts {
        out.push_str(&stmt(&st.kind));
        out.push('\n');
    }
    out
}
