use crate::fox::fox_derivative;
use crate::polymat::PolyMatrix;
use crate::presentation::Presentation;
use crate::rep::Representation;
use crate::{Error, Result};

/// The chain complex of the presentation twisted by α⊗φ:
/// F[t±1]^mk --d2--> F[t±1]^nk --d1--> F[t±1]^k, row vectors acting on the
/// right, so the chain condition reads d2·d1 = 0.
#[derive(Clone, Debug)]
pub struct TwistedComplex {
    /// mk × nk; block (j, i) is (α⊗φ)(∂r_j/∂x_i).
    pub d2: PolyMatrix,
    /// nk × k; block i is (α⊗φ)(x_i) − I.
    pub d1: PolyMatrix,
    pub n_gens: usize,
    pub n_rels: usize,
    pub rep_dim: usize,
}

/// The stacked blocks (α⊗φ)(x_i) − I.
pub fn d1_matrix(p: &Presentation, r: &Representation) -> PolyMatrix {
    let k = r.dim();
    let n = p.n_gens();
    let field = r.field();
    let blocks: Vec<PolyMatrix> = (0..n)
        .map(|i| {
            let m = r.evaluate_word_twisted(&crate::word::Word::generator(i), p.phi());
            m.sub(&PolyMatrix::identity(k, field))
        })
        .collect();
    PolyMatrix::from_fn(n * k, k, field, |row, col| {
        blocks[row / k].get(row % k, col).clone()
    })
}

pub fn chain_complex(p: &Presentation, r: &Representation) -> Result<TwistedComplex> {
    if r.n_gens() != p.n_gens() {
        return Err(Error::Input(format!(
            "representation has {} generator images, presentation has {}",
            r.n_gens(),
            p.n_gens()
        )));
    }
    for (idx, rel) in p.relators().iter().enumerate() {
        if !r.evaluate_word(rel).is_identity() {
            return Err(Error::Input(format!(
                "representation does not satisfy relator {}",
                idx + 1
            )));
        }
    }
    let n = p.n_gens();
    let m = p.relators().len();
    let k = r.dim();
    let field = r.field();

    let d1 = d1_matrix(p, r);

    let mut blocks: Vec<PolyMatrix> = Vec::with_capacity(m * n);
    for rel in p.relators() {
        for i in 0..n {
            let deriv = fox_derivative(rel, i, n)?;
            blocks.push(r.evaluate_twisted(&deriv, p.phi()));
        }
    }
    let d2 = PolyMatrix::from_fn(m * k, n * k, field, |row, col| {
        blocks[(row / k) * n + col / k].get(row % k, col % k).clone()
    });

    debug_assert!(d2.mul(&d1).is_zero(), "chain condition d2·d1 = 0 violated");
    Ok(TwistedComplex { d2, d1, n_gens: n, n_rels: m, rep_dim: k })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{braid_to_presentation, BraidWord};
    use crate::field::Field;
    use crate::homsearch::{search_homs, PermHom, SearchOptions};
    use crate::laurent::LaurentPoly;
    use crate::perm::Perm;
    use crate::presentation::ManifoldKind;
    use crate::rep::{build_representation, RepFlavor};

    fn unknot() -> Presentation {
        Presentation::new(
            vec!["x".into()],
            vec![],
            vec![1],
            ManifoldKind::BoundaryTori,
            "unknot",
        )
        .unwrap()
    }

    fn trivial_rep(n_gens: usize, field: Field) -> Representation {
        let h = PermHom::new(1, vec![Perm::identity(1); n_gens]).unwrap();
        build_representation(&h, RepFlavor::Trivial, field)
    }

    #[test]
    fn unknot_trivial_shapes() {
        let p = unknot();
        let cx = chain_complex(&p, &trivial_rep(1, Field::Q)).unwrap();
        assert_eq!((cx.d1.rows(), cx.d1.cols()), (1, 1));
        assert_eq!((cx.d2.rows(), cx.d2.cols()), (0, 1));
        // d1 = (t − 1)
        assert_eq!(cx.d1.get(0, 0), &LaurentPoly::from_pairs(Field::Q, &[(0, -1), (1, 1)]));
    }

    #[test]
    fn chain_condition_for_braid_closures() {
        for (braid, k) in [("braid 2: 1 1 1", 3), ("braid 3: 1 -2 1 -2", 4)] {
            let p = braid_to_presentation(&BraidWord::parse(braid).unwrap()).unwrap();
            let out = search_homs(&p, k, &SearchOptions::default()).unwrap();
            for h in out.homs.iter().take(8) {
                for flavor in [RepFlavor::Permutation, RepFlavor::Standard] {
                    let r = build_representation(h, flavor, Field::Fp(5));
                    let cx = chain_complex(&p, &r).unwrap();
                    assert!(cx.d2.mul(&cx.d1).is_zero());
                    assert_eq!(cx.d1.rows(), p.n_gens() * r.dim());
                    assert_eq!(cx.d2.rows(), p.relators().len() * r.dim());
                }
            }
        }
    }

    #[test]
    fn mismatched_representation_rejected() {
        let p = unknot();
        let r = trivial_rep(3, Field::Q);
        assert!(chain_complex(&p, &r).is_err());
    }

    #[test]
    fn unsatisfied_relator_rejected() {
        // x² = 1 is not satisfied by x ↦ (1 2 3)
        let p = Presentation::new(
            vec!["x".into()],
            vec![crate::word::Word::from_letters([1, 1])],
            vec![0],
            ManifoldKind::Closed,
            "c2",
        );
        // phi must vanish on relators and be nonzero for downstream ops, but
        // construction with zero phi is fine for the contract check.
        let p = p.unwrap();
        let h = PermHom::new(3, vec![Perm::parse_cycles("(1 2 3)", 3).unwrap()]).unwrap();
        let r = build_representation(&h, RepFlavor::Permutation, Field::Fp(7));
        assert!(matches!(chain_complex(&p, &r), Err(Error::Input(_))));
    }
}
