use crate::field::{Field, FieldElem};
use crate::fox::GroupRingElem;
use crate::homsearch::PermHom;
use crate::perm::Perm;
use crate::polymat::{FieldMatrix, PolyMatrix};
use crate::word::Word;
use crate::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RepFlavor {
    Trivial,
    Permutation,
    Standard,
}

impl RepFlavor {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(RepFlavor::Trivial),
            "perm" | "permutation" => Ok(RepFlavor::Permutation),
            "std" | "standard" => Ok(RepFlavor::Standard),
            other => Err(Error::Input(format!("unknown flavor `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            RepFlavor::Trivial => "trivial",
            RepFlavor::Permutation => "perm",
            RepFlavor::Standard => "std",
        }
    }
}

impl fmt::Display for RepFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Matrix realization of a permutation homomorphism: one invertible matrix
/// per generator, plus the generator inverses (permutation matrices invert
/// without linear algebra).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    flavor: RepFlavor,
    field: Field,
    dim: usize,
    degree: usize,
    matrices: Vec<FieldMatrix>,
    inverses: Vec<FieldMatrix>,
}

/// Dimension of a flavor realized from S_k: trivial 1, permutation k,
/// standard k−1 (the sum-zero subspace).
pub fn flavor_dim(flavor: RepFlavor, k: usize) -> usize {
    match flavor {
        RepFlavor::Trivial => 1,
        RepFlavor::Permutation => k,
        RepFlavor::Standard => k - 1,
    }
}

pub fn build_representation(h: &PermHom, flavor: RepFlavor, field: Field) -> Representation {
    let matrices: Vec<FieldMatrix> =
        h.images.iter().map(|p| matrix_of(p, flavor, field)).collect();
    let inverses: Vec<FieldMatrix> =
        h.images.iter().map(|p| matrix_of(&p.inverse(), flavor, field)).collect();
    for (m, inv) in matrices.iter().zip(&inverses) {
        debug_assert!(m.mul(inv).is_identity());
    }
    Representation {
        flavor,
        field,
        dim: flavor_dim(flavor, h.degree),
        degree: h.degree,
        matrices,
        inverses,
    }
}

/// The matrix of one permutation in the chosen flavor. Permutation flavor
/// sends e_j to e_{σ(j)}; standard flavor acts on the sum-zero subspace in
/// the basis f_i = e_i − e_{i+1}.
fn matrix_of(p: &Perm, flavor: RepFlavor, field: Field) -> FieldMatrix {
    let k = p.degree();
    match flavor {
        RepFlavor::Trivial => FieldMatrix::identity(1, field),
        RepFlavor::Permutation => FieldMatrix::from_fn(k, k, field, |i, j| {
            if p.apply(j) == i {
                field.one()
            } else {
                field.zero()
            }
        }),
        RepFlavor::Standard => FieldMatrix::from_fn(k - 1, k - 1, field, |i, j| {
            // column j is e_a − e_b in the f-basis, a = σ(j), b = σ(j+1)
            let a = p.apply(j);
            let b = p.apply(j + 1);
            if a <= i && i < b {
                field.one()
            } else if b <= i && i < a {
                -&field.one()
            } else {
                field.zero()
            }
        }),
    }
}

impl Representation {
    pub fn flavor(&self) -> RepFlavor {
        self.flavor
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Degree k of the symmetric group the representation came from.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n_gens(&self) -> usize {
        self.matrices.len()
    }

    pub fn generator_matrix(&self, gen: usize) -> &FieldMatrix {
        &self.matrices[gen]
    }

    pub fn evaluate_word(&self, w: &Word) -> FieldMatrix {
        let mut acc = FieldMatrix::identity(self.dim, self.field);
        for (gen, sign) in w.iter() {
            let m = if sign > 0 { &self.matrices[gen] } else { &self.inverses[gen] };
            acc = acc.mul(m);
        }
        acc
    }

    /// Image of a group-ring element under α⊗φ: each group term w becomes
    /// the matrix of w times t^{φ(w)}, summed with its integer coefficient.
    pub fn evaluate_twisted(&self, e: &GroupRingElem, phi: &[i64]) -> PolyMatrix {
        let mut acc = PolyMatrix::zero(self.dim, self.dim, self.field);
        for (w, c) in e.terms() {
            let coeff = FieldElem::from_i64(c, self.field);
            if coeff.is_zero() {
                continue;
            }
            let m = self.evaluate_word(w).scaled(&coeff);
            acc = acc.add(&m.scaled_t_power(w.phi_weight(phi)));
        }
        acc
    }

    /// Image of a single word under α⊗φ, as a Laurent matrix.
    pub fn evaluate_word_twisted(&self, w: &Word, phi: &[i64]) -> PolyMatrix {
        self.evaluate_word(w).scaled_t_power(w.phi_weight(phi))
    }

    /// The adjoint ᾱ with ᾱ(g) = α(g⁻¹)ᵀ, so ⟨α(g⁻¹)v, w⟩ = ⟨v, ᾱ(g)w⟩
    /// for the standard bilinear form.
    pub fn adjoint(&self) -> Representation {
        Representation {
            flavor: self.flavor,
            field: self.field,
            dim: self.dim,
            degree: self.degree,
            matrices: self.inverses.iter().map(|m| m.transpose()).collect(),
            inverses: self.matrices.iter().map(|m| m.transpose()).collect(),
        }
    }
}
