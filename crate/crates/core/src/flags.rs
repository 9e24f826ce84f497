//! Structural flags of a quotient ring computed from its presentation.

use crate::error::Result;
use crate::matrix::{self, Matrix};
use crate::module::{minimal_ideal_gens, ModulePresentation};
use crate::poly::Polynomial;
use crate::resolution;
use crate::ring::{RingFlags, RingPresentation};

const JACOBIAN_MINOR_CAP: u128 = 20_000;

/// Complete intersection: the ideal needs exactly `codim` generators.
/// Isolated singularity: Jacobian criterion on the punctured spectrum.
/// Domain: only decided positively (polynomial ring, or a complete
/// intersection of dimension at least 2 with an isolated singularity, which
/// is normal); otherwise left open.
pub(crate) fn derive(ring: &RingPresentation) -> RingFlags {
    if ring.is_polynomial_ring() {
        return RingFlags {
            domain: Some(true),
            cohen_macaulay: Some(true),
            complete_intersection: Some(true),
            gorenstein: Some(true),
            isolated_singularity: Some(true),
        };
    }
    let dim = ring.dim();
    let height = ring.nvars() - dim;
    let gens = minimal_generators(ring);
    let ci = gens.len() == height;
    let isolated = jacobian_test(ring, &gens, height).ok();
    let domain = match isolated {
        Some(true) if ci && dim >= 2 => Some(true),
        _ => None,
    };
    let (cm, gor) = match resolution::ambient_betti_of_ring(ring) {
        Some(betti) => {
            let pd = betti.len() - 1;
            let depth = ring.nvars() - pd;
            let cm = depth == dim;
            (Some(cm), Some(cm && betti[pd] == 1))
        }
        None => (None, None),
    };
    RingFlags {
        domain,
        cohen_macaulay: cm,
        complete_intersection: Some(ci),
        gorenstein: gor,
        isolated_singularity: isolated,
    }
}

fn minimal_generators(ring: &RingPresentation) -> Vec<Polynomial> {
    let amb = ring.ambient();
    let base = RingPresentation::new(amb.clone(), vec![]).expect("polynomial ring");
    minimal_ideal_gens(&base, ring.basis().iter().map(|p| p.as_vec().clone()).collect())
}

/// `dim R / J <= 0` where `J` is generated by the `height`-minors of the
/// Jacobian matrix.
pub(crate) fn jacobian_test(ring: &RingPresentation, gens: &[Polynomial], height: usize) -> Result<bool> {
    let amb = ring.ambient();
    let jac: Matrix = gens
        .iter()
        .map(|g| (0..ring.nvars()).map(|i| g.derivative(i)).collect())
        .collect();
    let minors = matrix::minors(amb, &jac, height, JACOBIAN_MINOR_CAP)?;
    let rp = std::sync::Arc::new(RingPresentation::new(amb.clone(), ring.basis().to_vec())?);
    let reduced: Vec<Polynomial> = minors.iter().map(|m| rp.reduce(m)).filter(|m| !m.is_zero()).collect();
    if reduced.is_empty() {
        return Ok(ring.dim() == 0);
    }
    let q = ModulePresentation::cyclic(&rp, &reduced)?;
    Ok(q.dim().unwrap_or(0) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::scalar::Field;

    #[test]
    fn quadric_cone_flags() {
        let r = RingPresentation::parse(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex, &["x*y - z^2"])
            .unwrap();
        let f = r.flags();
        assert_eq!(f.complete_intersection, Some(true));
        assert_eq!(f.isolated_singularity, Some(true));
        assert_eq!(f.domain, Some(true));
        assert_eq!(f.cohen_macaulay, Some(true));
        assert_eq!(f.gorenstein, Some(true));
    }

    #[test]
    fn node_is_not_declared_domain() {
        let r = RingPresentation::parse(Field::Rationals, &["x", "y"], MonomialOrder::Grevlex, &["x*y"]).unwrap();
        assert!(!r.is_domain());
        assert_eq!(r.flags().cohen_macaulay, Some(true));
        let t = RingPresentation::parse(
            Field::Rationals,
            &["a", "b", "c", "d"],
            MonomialOrder::Grevlex,
            &["a*c - b^2", "b*d - c^2", "a*d - b*c"],
        )
        .unwrap();
        let f = t.flags();
        assert_eq!(f.complete_intersection, Some(false));
        assert_eq!(f.cohen_macaulay, Some(true));
        assert_eq!(f.gorenstein, Some(false));
    }
}
