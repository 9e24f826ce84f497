use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    Int(i64),
    /// Polynomial source text with whitespace runs collapsed.
    Poly(String),
    Matrix(Vec<Vec<String>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Call {
    pub func: String,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDef {
    Poly {
        field: FieldSpec,
        vars: Vec<String>,
        order: Option<String>,
        ideal: Vec<String>,
    },
    Veronese {
        field: FieldSpec,
        d: i64,
        n: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Eq,
    Le,
    Ge,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Eq => "==",
            CmpOp::Le => "<=",
            CmpOp::Ge => ">=",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rhs {
    Int(i64),
    Inf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cond {
    Compare { lhs: Call, op: CmpOp, rhs: Rhs },
    Pred { negated: bool, call: Call },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StmtKind {
    Ring { name: String, def: RingDef },
    Module { name: String, expr: Call },
    Factorization { name: String, expr: Call },
    Assert(Cond),
    Check { call: Call, expect: Option<bool> },
    Print(Call),
}

impl StmtKind {
    pub fn label(&self) -> &'static str {
        match self {
            StmtKind::Ring { .. } => "ring",
            StmtKind::Module { .. } => "module",
            StmtKind::Factorization { .. } => "mf",
            StmtKind::Assert(_) => "assert",
            StmtKind::Check { .. } => "check",
            StmtKind::Print(_) => "print",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stmt {
    pub line: usize,
    pub kind: StmtKind,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Scenario {
    pub stmts: Vec<Stmt>,
}

impl Scenario {
    /// Same statements with line numbers dropped, for round-trip comparison.
    pub fn shape(&self) -> Vec<StmtKind> {
        self.stmts.iter().map(|s| s.kind.clone()).collect()
    }
}
