//! Argument signatures of every callable name in the scenario language.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ring,
    Module,
    Mf,
    /// A ring or a module.
    Target,
    Int,
    Poly,
    /// One or more polynomials; always last.
    Polys,
    Matrix,
    /// A fresh variable name.
    Var,
}

#[derive(Clone, Copy, Debug)]
pub struct Sig {
    pub name: &'static str,
    pub args: &'static [Kind],
    /// Number of trailing arguments that may be left out.
    pub optional: usize,
}

use Kind::*;

const fn sig(name: &'static str, args: &'static [Kind], optional: usize) -> Sig {
    Sig { name, args, optional }
}

pub const MODULE_EXPRS: &[Sig] = &[
    sig("free", &[Ring, Int], 0),
    sig("ideal", &[Ring, Polys], 0),
    sig("coker", &[Ring, Matrix], 0),
    sig("residue", &[Ring], 0),
    sig("syz", &[Module, Int], 0),
    sig("dual", &[Module], 0),
    sig("vdual", &[Module], 0),
    sig("pushforward", &[Module], 0),
    sig("canonical", &[Ring], 0),
    sig("tensor", &[Module, Module], 0),
    sig("hom", &[Module, Module], 0),
    sig("shift", &[Module, Int], 0),
    sig("veronese_class", &[Ring, Int], 0),
    sig("mf_module", &[Mf], 0),
];

pub const MF_EXPRS: &[Sig] = &[
    sig("matfac", &[Ring, Poly, Matrix, Matrix], 0),
    sig("knorrer", &[Mf, Var, Var], 0),
];

pub const NUM_EXPRS: &[Sig] = &[
    sig("depth", &[Target], 0),
    sig("dim", &[Target], 0),
    sig("mu", &[Module], 0),
    sig("rank", &[Module], 0),
    sig("length", &[Module], 0),
    sig("edim", &[Ring], 0),
    sig("codim", &[Ring], 0),
    sig("tor_len", &[Module, Module, Int], 0),
    sig("ext_len", &[Module, Module, Int], 0),
    sig("betti", &[Module, Int], 0),
];

pub const PREDS: &[Sig] = &[
    sig("torsionfree", &[Module], 0),
    sig("reflexive", &[Module], 0),
    sig("free", &[Module], 0),
    sig("mcm", &[Module], 0),
    sig("locfree_punctured", &[Module], 0),
    sig("zero", &[Module], 0),
    sig("periodic", &[Module], 0),
    sig("iso", &[Module, Module], 0),
    sig("ext_zero", &[Module, Module, Int], 0),
    sig("tor_zero", &[Module, Module, Int], 0),
    sig("valid", &[Mf], 0),
    sig("reduced", &[Mf], 0),
    sig("domain", &[Ring], 0),
    sig("cm", &[Ring], 0),
    sig("gorenstein", &[Ring], 0),
    sig("ci", &[Ring], 0),
    sig("isolated", &[Ring], 0),
];

pub const CHECKS: &[Sig] = &[
    sig("depth_formula", &[Module, Module, Int], 1),
    sig("ext_depth", &[Module, Module, Int], 0),
    sig("cor25", &[Module, Module, Int], 1),
    sig("semidualizing", &[Module, Int], 1),
    sig("ar", &[Module, Int], 1),
    sig("length_duality", &[Module, Module, Int], 0),
    sig("depth_via_ext", &[Module], 0),
    sig("pushforward", &[Module], 0),
    sig("high_depth", &[Module], 0),
    sig("mu_formula", &[Ring, Int], 0),
    sig("reflexive_product", &[Ring, Int, Int], 0),
    sig("hom_class", &[Ring, Int, Int], 0),
    sig("class_scan", &[Ring, Int], 1),
    sig("decomposition", &[Ring], 0),
    sig("pair_scan", &[Ring], 0),
    sig("unimodality", &[Int, Int], 0),
    sig("mf_resolution", &[Mf, Int], 1),
    sig("knorrer_transfer", &[Mf, Int], 1),
];

pub const PRINTS: &[Sig] = &[
    sig("resolution", &[Module, Int], 1),
    sig("hilbert", &[Module], 0),
    sig("presentation", &[Module], 0),
    sig("complexity", &[Module, Int], 1),
    sig("flags", &[Ring], 0),
];

pub fn find(table: &[Sig], name: &str) -> Option<Sig> {
    table.iter().find(|s| s.name == name).copied()
}

pub fn names(table: &[Sig]) -> Vec<String> {
    table.iter().map(|s| s.name.to_string()).collect()
}
