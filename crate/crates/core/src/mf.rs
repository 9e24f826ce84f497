//! Matrix factorizations of a homogeneous `f`, their cokernels over
//! `S/(f)`, the 2-periodic resolution and the Knörrer transform to `f + uv`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::homological::{depth, ext_range, star_dual, Depth};
use crate::matrix::{self, Matrix};
use crate::module::{tensor, ModulePresentation};
use crate::poly::{PolyRing, Polynomial};
use crate::resolution::{FreeResolution, Over};
use crate::ring::{Ring, RingPresentation};

#[derive(Clone, Debug)]
pub struct MatrixFactorization {
    pub ambient: Arc<PolyRing>,
    pub f: Polynomial,
    pub phi: Matrix,
    pub psi: Matrix,
}

impl MatrixFactorization {
    /// Checks shapes only; use [`mf_validate`] for the products.
    pub fn new(f: Polynomial, phi: Matrix, psi: Matrix) -> Result<MatrixFactorization> {
        let ambient = f.ring().clone();
        let (r, c) = matrix::shape(&phi);
        if r != c || matrix::shape(&psi) != (r, c) || r == 0 {
            return Err(Error::InvalidMf("matrices must be square of equal positive size".into()));
        }
        if phi.iter().chain(psi.iter()).flatten().any(|p| p.ring() != &ambient) {
            return Err(Error::RingMismatch);
        }
        Ok(MatrixFactorization { ambient, f, phi, psi })
    }

    pub fn size(&self) -> usize {
        self.phi.len()
    }

    /// No entry of either matrix is a unit.
    pub fn is_reduced(&self) -> bool {
        self.phi
            .iter()
            .chain(self.psi.iter())
            .flatten()
            .all(|p| p.constant_coeff().is_zero())
    }

    pub fn ring(&self) -> Result<Ring> {
        RingPresentation::new(self.ambient.clone(), vec![self.f.clone()])
    }

    fn check(&self) -> Result<()> {
        if mf_validate(self) {
            Ok(())
        } else {
            Err(Error::InvalidMf("products are not f times the identity".into()))
        }
    }
}

fn is_f_identity(m: &Matrix, f: &Polynomial) -> bool {
    m.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, e)| if i == j { e == f } else { e.is_zero() })
    })
}

pub fn mf_validate(mf: &MatrixFactorization) -> bool {
    if mf.f.is_zero() || !mf.f.is_homogeneous() {
        return false;
    }
    let ab = matrix::product(&mf.ambient, &mf.phi, &mf.psi);
    let ba = matrix::product(&mf.ambient, &mf.psi, &mf.phi);
    match (ab, ba) {
        (Ok(ab), Ok(ba)) => is_f_identity(&ab, &mf.f) && is_f_identity(&ba, &mf.f),
        _ => false,
    }
}

/// Source degrees of `m` given its row degrees.
fn column_degrees(m: &Matrix, rows: &[i64]) -> Vec<i64> {
    let (r, c) = matrix::shape(m);
    (0..c)
        .map(|j| {
            (0..r)
                .find(|&i| !m[i][j].is_zero())
                .map(|i| rows[i] + m[i][j].homogeneous_degree().unwrap())
                .unwrap_or(0)
        })
        .collect()
}

/// `coker(phi)` over `S/(f)`.
pub fn mf_module(mf: &MatrixFactorization) -> Result<ModulePresentation> {
    mf.check()?;
    let ring = mf.ring()?;
    let (rows, _) = matrix::homogeneous_degrees(&mf.phi)?;
    let m = ModulePresentation::from_matrix(&ring, rows, &mf.phi)?;
    Ok(m.minimize())
}

/// `... -> F --psi--> F --phi--> F`, with `max(bound, 1)` maps.
pub fn mf_resolution(mf: &MatrixFactorization, bound: usize) -> Result<FreeResolution> {
    mf.check()?;
    if !mf.is_reduced() {
        return Err(Error::InvalidMf("matrix factorization has a unit entry".into()));
    }
    let ring = mf.ring()?;
    let (rows, _) = matrix::homogeneous_degrees(&mf.phi)?;
    let mut degrees = vec![rows];
    let mut maps = Vec::new();
    for i in 0..bound.max(1) {
        let m = if i % 2 == 0 { &mf.phi } else { &mf.psi };
        let src = column_degrees(m, degrees.last().unwrap());
        let cols = matrix::transpose(m)
            .iter()
            .map(|c| matrix::vec_from_coords(&mf.ambient, c))
            .collect();
        maps.push(cols);
        degrees.push(src);
    }
    Ok(FreeResolution::from_parts(
        Over::Quotient,
        &ring,
        degrees,
        maps,
        Some(bound),
        false,
    ))
}

/// Factorization of `f + uv` with `A = [[phi, -v], [u, psi]]` and
/// `B = [[psi, v], [-u, phi]]` (blocks are multiples of the identity).
pub fn knorrer(mf: &MatrixFactorization, u: &str, v: &str) -> Result<MatrixFactorization> {
    let amb = &mf.ambient;
    for name in [u, v] {
        if amb.var_index(name).is_some() {
            return Err(Error::VariableClash(name.to_string()));
        }
    }
    if u == v {
        return Err(Error::VariableClash(u.to_string()));
    }
    let df = mf
        .f
        .homogeneous_degree()
        .ok_or_else(|| Error::NonHomogeneous(mf.f.to_string()))?;
    if df < 2 {
        return Err(Error::InvalidMf("f must have degree at least 2".into()));
    }
    let n = amb.nvars();
    let mut names: Vec<&str> = amb.names().iter().map(|s| s.as_str()).collect();
    names.push(u);
    names.push(v);
    let mut weights = amb.weights().to_vec();
    weights.push(1);
    weights.push(df as u32 - 1);
    let big = PolyRing::weighted(amb.field(), &names, &weights, amb.order())?;
    let map: Vec<usize> = (0..n).collect();
    let up = |m: &Matrix| -> Matrix {
        m.iter().map(|r| r.iter().map(|p| p.remap(&big, &map)).collect()).collect()
    };
    let phi = up(&mf.phi);
    let psi = up(&mf.psi);
    let uu = Polynomial::var(&big, n);
    let vv = Polynomial::var(&big, n + 1);
    let k = mf.size();
    let zero = Polynomial::zero(&big);
    let block = |tl: &Matrix, tr: &Polynomial, bl: &Polynomial, br: &Matrix| -> Matrix {
        let mut out = vec![vec![zero.clone(); 2 * k]; 2 * k];
        for i in 0..k {
            for j in 0..k {
                out[i][j] = tl[i][j].clone();
                out[k + i][k + j] = br[i][j].clone();
            }
            out[i][k + i] = tr.clone();
            out[k + i][i] = bl.clone();
        }
        out
    };
    let a = block(&phi, &vv.neg(), &uu, &psi);
    let b = block(&psi, &vv, &uu.neg(), &phi);
    let f = mf.f.remap(&big, &map).add(&uu.mul(&vv)?)?;
    let out = MatrixFactorization::new(f, a, b)?;
    if !mf_validate(&out) {
        return Err(Error::InvalidMf("transform failed its product check".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct TransferReport {
    pub bound: usize,
    /// `Ext^j(M, M) = 0` for `j = 1..=bound`.
    pub base_vanishing: Vec<bool>,
    pub transform_vanishing: Vec<bool>,
    pub transfers: bool,
}

pub fn knorrer_ext_transfer_check(mf: &MatrixFactorization, bound: usize) -> Result<TransferReport> {
    let m = mf_module(mf)?;
    let n = mf_module(&knorrer(mf, "u", "v").or_else(|_| knorrer(mf, "u_", "v_"))?)?;
    let em = ext_range(&m, &m, bound)?;
    let en = ext_range(&n, &n, bound)?;
    let base: Vec<bool> = em.iter().skip(1).map(|e| e.is_zero()).collect();
    let trans: Vec<bool> = en.iter().skip(1).map(|e| e.is_zero()).collect();
    Ok(TransferReport {
        bound,
        transfers: base == trans,
        base_vanishing: base,
        transform_vanishing: trans,
    })
}

/// `depth(M ⊗ M*)` for `M = coker(phi)`.
pub fn self_dual_tensor_depth(mf: &MatrixFactorization) -> Result<Depth> {
    let m = mf_module(mf)?;
    Ok(depth(&tensor(&m, &star_dual(&m)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::resolution::resolve;
    use crate::scalar::Field;

    fn mf(names: &[&str], f: &str, phi: &[&[&str]], psi: &[&[&str]]) -> MatrixFactorization {
        let s = PolyRing::new(Field::Rationals, names, MonomialOrder::Grevlex).unwrap();
        let p = |t: &str| Polynomial::parse(&s, t).unwrap();
        let m = |rows: &[&[&str]]| -> Matrix { rows.iter().map(|r| r.iter().map(|t| p(t)).collect()).collect() };
        MatrixFactorization::new(p(f), m(phi), m(psi)).unwrap()
    }

    #[test]
    fn validation() {
        assert!(mf_validate(&mf(&["x", "y"], "x*y", &[&["x"]], &[&["y"]])));
        assert!(!mf_validate(&mf(&["x", "y"], "x*y", &[&["x"]], &[&["x"]])));
        let q = mf(&["x", "y", "z"], "x*y - z^2", &[&["x", "z"], &["z", "y"]], &[&["y", "-z"], &["-z", "x"]]);
        assert!(mf_validate(&q));
        let m = mf_module(&q).unwrap();
        assert_eq!(m.mu(), 2);
        assert_eq!(m.rank().unwrap(), 1);
        assert!(!m.is_free());
        let unit = mf(&["x", "y"], "x*y", &[&["1"]], &[&["x*y"]]);
        assert!(mf_module(&unit).unwrap().is_zero());
        assert!(mf_resolution(&unit, 2).is_err());
    }

    #[test]
    fn periodic_resolutions() {
        let b = mf(&["x", "y"], "x*y", &[&["x"]], &[&["y"]]);
        let r = mf_resolution(&b, 6).unwrap();
        assert_eq!(r.betti_numbers(), vec![1; 7]);
        assert!(r.composites_vanish() && r.is_minimal());
        let q = mf(&["x", "y", "z"], "x*y - z^2", &[&["x", "z"], &["z", "y"]], &[&["y", "-z"], &["-z", "x"]]);
        let r = mf_resolution(&q, 6).unwrap();
        let direct = resolve(&mf_module(&q).unwrap(), 6);
        assert_eq!(r.betti_table().to_json(), direct.betti_table().to_json());
        assert_eq!(mf_resolution(&q, 0).unwrap().length(), 1);
    }

    #[test]
    fn knorrer_chain() {
        let b = mf(&["x", "y"], "x*y", &[&["x"]], &[&["y"]]);
        let k = knorrer(&b, "u", "v").unwrap();
        assert!(mf_validate(&k));
        assert_eq!(k.size(), 2);
        assert_eq!(k.phi[0][1].to_string(), "-v");
        assert!(matches!(knorrer(&b, "x", "v"), Err(Error::VariableClash(_))));
        let t = knorrer_ext_transfer_check(&b, 5).unwrap();
        assert!(t.transfers);
        assert_eq!(t.base_vanishing, vec![true, false, true, false, true]);
        assert_eq!(self_dual_tensor_depth(&k).unwrap(), Depth::Finite(1));
        let kk = knorrer(&k, "s", "t").unwrap();
        assert!(mf_validate(&kk) && kk.is_reduced());
        assert_eq!(kk.size(), 4);
    }
}
