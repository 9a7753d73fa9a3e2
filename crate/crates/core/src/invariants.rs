use crate::complex::{chain_complex, d1_matrix, TwistedComplex};
use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::polymat::PolyMatrix;
use crate::presentation::{ManifoldKind, Presentation};
use crate::rep::{Representation, RepFlavor};
use crate::smith::{coker_order, smith_normal_form, CokernelOrder};
use crate::{Error, Result};
use num_rational::Ratio;

/// Everything the degree bounds need: the orders of H₀, H₁, H₂ (and the
/// torsion part of H₁), all canonical, plus the derived torsion degree
/// deg Δ₁ − deg Δ₀ − deg Δ₂ when Δ₁ ≠ 0.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub label: String,
    pub kind: ManifoldKind,
    pub field: Field,
    pub flavor: RepFlavor,
    /// Matrix size of the representation; the divisor in all bounds.
    pub rep_dim: usize,
    /// Degree of the symmetric group the representation came from.
    pub sym_degree: usize,
    pub delta0: LaurentPoly,
    pub delta1: LaurentPoly,
    pub delta1_torsion: LaurentPoly,
    pub delta2: LaurentPoly,
    /// The closed-case duality expression for Δ₂ assumes Δ₁ ≠ 0; false
    /// records that the hypothesis failed and Δ₂ is reported formally.
    pub delta2_applicable: bool,
    pub torsion_degree: Option<i64>,
    /// Elementary Smith operations spent; deterministic for fixed input.
    pub snf_ops: u64,
}

impl InvariantReport {
    /// Lower bound for the Thurston norm of φ: torsion degree over the
    /// representation dimension. None when Δ₁ = 0.
    pub fn norm_bound(&self) -> Option<Ratio<i64>> {
        self.torsion_degree.map(|d| Ratio::new(d, self.rep_dim as i64))
    }

    /// Knot-exterior genus bound: norm bound / 2 + 1/2, with the integer
    /// round-up reported alongside. None for closed manifolds or Δ₁ = 0.
    pub fn genus_bound(&self) -> Option<(Ratio<i64>, i64)> {
        if self.kind != ManifoldKind::BoundaryTori {
            return None;
        }
        let rational = self.norm_bound()? / 2 + Ratio::new(1, 2);
        Some((rational, rational.ceil().to_integer()))
    }

    /// deg Δ̃₁ / k − 1, the bound available for boundary classes even when
    /// Δ₁ = 0. The injectivity hypothesis behind it is a caller assumption.
    pub fn boundary_class_bound(&self) -> Ratio<i64> {
        let deg = self.delta1_torsion.degree().expect("torsion order is never zero");
        Ratio::new(deg, self.rep_dim as i64) - 1
    }
}

/// Order of H₀: the cokernel of d1. Nonzero whenever φ is nontrivial; a zero
/// result is an internal error, not a value.
pub fn delta0(p: &Presentation, r: &Representation) -> Result<LaurentPoly> {
    if p.phi_is_zero() {
        return Err(Error::Input("phi is trivial; Δ₀ needs a nonzero class".into()));
    }
    let d1 = d1_matrix(p, r);
    let coker = coker_order(&d1.transpose(), r.dim())?;
    if coker.order.is_zero() {
        return Err(Error::Internal(
            "Δ₀ vanished; H₀ must be torsion for nontrivial phi".into(),
        ));
    }
    Ok(coker.order)
}

/// Orders of H₁ and of its torsion part, as (Δ₁, Δ̃₁). Δ₁ = 0 exactly when
/// H₁ has positive free rank; Δ̃₁ is defined regardless.
pub fn delta1(p: &Presentation, r: &Representation) -> Result<(LaurentPoly, LaurentPoly)> {
    if p.phi_is_zero() {
        return Err(Error::Input("phi is trivial; Δ₁ needs a nonzero class".into()));
    }
    let cx = chain_complex(p, r)?;
    let (h1, _) = h1_order(&cx)?;
    Ok((h1.order, h1.torsion_order))
}

/// H₁ = ker d1 / im d2: Smith-decompose d1ᵀ, take the kernel basis from the
/// trailing columns of V, rewrite each row of d2 in those coordinates, and
/// read the order off the Smith divisors of the resulting relation matrix.
fn h1_order(cx: &TwistedComplex) -> Result<(CokernelOrder, u64)> {
    let field = cx.d1.field();
    let nk = cx.n_gens * cx.rep_dim;
    let mk = cx.n_rels * cx.rep_dim;

    let d1t = cx.d1.transpose();
    let snf = smith_normal_form(&d1t);
    let rank = snf.rank();
    let ker_dim = nk - rank;

    // y = V⁻¹·wᵀ for each row w of d2; the first `rank` coordinates must
    // vanish because w lies in ker d1.
    let mut b = PolyMatrix::zero(ker_dim, mk, field);
    for row in 0..mk {
        for i in 0..nk {
            let mut acc = LaurentPoly::zero(field);
            for j in 0..nk {
                let v = snf.v_inv.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let w = cx.d2.get(row, j);
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(v * w);
            }
            if i < rank {
                if !acc.is_zero() {
                    return Err(Error::Internal(
                        "image of d2 left the kernel of d1 in Smith coordinates".into(),
                    ));
                }
            } else {
                b.set(i - rank, row, acc);
            }
        }
    }

    let coker = coker_order(&b, ker_dim)?;
    // Euler bookkeeping: rank d1 + rank d2 + free rank of H₁ fills the
    // middle term of the complex.
    debug_assert_eq!(rank + coker.divisors.len() + coker.free_rank, nk);
    let ops = snf.ops + coker.ops;
    Ok((coker, ops))
}

/// Order of H₂. Boundary made of tori forces 1; in the closed case it equals
/// the H₀ order of the adjoint representation with the dual class, which is
/// Δ₀ of the adjoint with φ negated.
pub fn delta2(p: &Presentation, r: &Representation) -> Result<LaurentPoly> {
    match p.kind() {
        ManifoldKind::BoundaryTori => Ok(LaurentPoly::one(r.field())),
        ManifoldKind::Closed => {
            let dual = p.with_phi_scaled(-1);
            delta0(&dual, &r.adjoint())
        }
    }
}

/// Full pipeline: Δ₀, (Δ₁, Δ̃₁), Δ₂, torsion degree. φ is primitivized
/// first so the degree bounds refer to the primitive class; the raw delta
/// functions above use φ as given.
pub fn compute_invariants(p: &Presentation, r: &Representation) -> Result<InvariantReport> {
    if p.phi_is_zero() {
        return Err(Error::Input("phi is trivial; invariants need a nonzero class".into()));
    }
    let p = p.primitivized();

    let cx = chain_complex(&p, r)?;
    let h0 = coker_order(&cx.d1.transpose(), r.dim())?;
    if h0.order.is_zero() {
        return Err(Error::Internal(
            "Δ₀ vanished; H₀ must be torsion for nontrivial phi".into(),
        ));
    }
    let (h1, h1_ops) = h1_order(&cx)?;
    let delta2 = delta2(&p, r)?;
    let delta1_nonzero = !h1.order.is_zero();

    let torsion_degree = if delta1_nonzero {
        let d1 = h1.order.degree().unwrap();
        let d0 = h0.order.degree().unwrap();
        let d2 = delta2.degree().unwrap();
        Some(d1 - d0 - d2)
    } else {
        None
    };

    Ok(InvariantReport {
        label: p.label().to_string(),
        kind: p.kind(),
        field: r.field(),
        flavor: r.flavor(),
        rep_dim: r.dim(),
        sym_degree: r.degree(),
        delta0: h0.order,
        delta1: h1.order,
        delta1_torsion: h1.torsion_order,
        delta2,
        delta2_applicable: delta1_nonzero,
        torsion_degree,
        snf_ops: h0.ops + h1_ops,
    })
}
