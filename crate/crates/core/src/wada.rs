use crate::complex::chain_complex;
use crate::laurent::LaurentPoly;
use crate::presentation::Presentation;
use crate::rep::Representation;
use crate::{Error, Result};

/// Torsion as a quotient of determinants: the Fox minor over the column
/// determinant. Computed independently of the Smith-form path and used to
/// cross-check torsion degrees.
#[derive(Clone, Debug)]
pub struct WadaQuotient {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
    /// Which generator column was omitted.
    pub omitted: usize,
    /// deg(num) − deg(den); None when the numerator vanishes (torsion
    /// undefined).
    pub degree: Option<i64>,
}

/// deg(f/g) := deg f − deg g for the determinant quotient. Needs a
/// deficiency-1 presentation and a generator x_j with
/// det((α⊗φ)(x_j − 1)) ≠ 0; the result is independent of the choice.
pub fn torsion_wada(p: &Presentation, r: &Representation) -> Result<WadaQuotient> {
    let n = p.n_gens();
    let m = p.relators().len();
    if m + 1 != n {
        return Err(Error::Input(format!(
            "determinant quotient needs deficiency 1, got {n} generators and {m} relators"
        )));
    }
    let k = r.dim();
    let cx = chain_complex(p, r)?;
    for j in 0..n {
        // (α⊗φ)(x_j) − I is the j-th block of d1.
        let block = cx.d1.submatrix(j * k..(j + 1) * k, 0..k);
        let den = block.det();
        if den.is_zero() {
            continue;
        }
        let minor = cx.d2.drop_cols(j * k, k);
        let num = minor.det();
        let degree = match (num.degree(), den.degree()) {
            (Some(a), Some(b)) => Some(a - b),
            _ => None,
        };
        return Ok(WadaQuotient { numerator: num, denominator: den, omitted: j, degree });
    }
    Err(Error::OracleUnavailable)
}
