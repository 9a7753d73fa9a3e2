use crate::field::Field;
use crate::laurent::LaurentPoly;
use crate::polymat::PolyMatrix;
use crate::{Error, Result};

/// U·A·V = D with U, V square of unit determinant over F[t±1], D diagonal,
/// and the nonzero diagonal entries forming a canonical divisibility chain.
/// The inverses are tracked alongside because kernel computations downstream
/// need coordinates in both bases.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: PolyMatrix,
    pub d: PolyMatrix,
    pub v: PolyMatrix,
    pub u_inv: PolyMatrix,
    pub v_inv: PolyMatrix,
    pub divisors: Vec<LaurentPoly>,
    /// Number of elementary row/column operations performed; deterministic
    /// for fixed input, used as a machine-independent cost measure.
    pub ops: u64,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

fn unit_inv(p: &LaurentPoly) -> LaurentPoly {
    assert!(p.is_unit(), "inverse of non-unit Laurent polynomial");
    LaurentPoly::monomial(p.leading().inv(), -p.min_exp().unwrap())
}

struct Work {
    d: PolyMatrix,
    u: PolyMatrix,
    v: PolyMatrix,
    u_inv: PolyMatrix,
    v_inv: PolyMatrix,
    field: Field,
    ops: u64,
}

impl Work {
    fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.ops += 1;
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let x = m.get(a, j).clone();
                let y = m.get(b, j).clone();
                m.set(a, j, y);
                m.set(b, j, x);
            }
        }
        let m = &mut self.u_inv;
        for i in 0..m.rows() {
            let x = m.get(i, a).clone();
            let y = m.get(i, b).clone();
            m.set(i, a, y);
            m.set(i, b, x);
        }
    }

    fn col_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.ops += 1;
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.rows() {
                let x = m.get(i, a).clone();
                let y = m.get(i, b).clone();
                m.set(i, a, y);
                m.set(i, b, x);
            }
        }
        let m = &mut self.v_inv;
        for j in 0..m.cols() {
            let x = m.get(a, j).clone();
            let y = m.get(b, j).clone();
            m.set(a, j, y);
            m.set(b, j, x);
        }
    }

    /// row[dst] += q · row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &LaurentPoly) {
        if q.is_zero() {
            return;
        }
        self.ops += 1;
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let add = q * m.get(src, j);
                if add.is_zero() {
                    continue;
                }
                let val = m.get(dst, j) + &add;
                m.set(dst, j, val);
            }
        }
        // (I + qE_{ds})^{-1} = I - qE_{ds}; right-multiplying U^{-1} by it
        // subtracts q·column[dst] from column[src].
        let m = &mut self.u_inv;
        for i in 0..m.rows() {
            let sub = q * m.get(i, dst);
            if sub.is_zero() {
                continue;
            }
            let val = m.get(i, src) - &sub;
            m.set(i, src, val);
        }
    }

    /// col[dst] += q · col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &LaurentPoly) {
        if q.is_zero() {
            return;
        }
        self.ops += 1;
        for m in [&mut self.d, &mut self.v] {
            for i in 0..m.rows() {
                let add = q * m.get(i, src);
                if add.is_zero() {
                    continue;
                }
                let val = m.get(i, dst) + &add;
                m.set(i, dst, val);
            }
        }
        let m = &mut self.v_inv;
        for j in 0..m.cols() {
            let sub = q * m.get(dst, j);
            if sub.is_zero() {
                continue;
            }
            let val = m.get(src, j) - &sub;
            m.set(src, j, val);
        }
    }

    /// row[i] *= unit
    fn row_scale(&mut self, i: usize, unit: &LaurentPoly) {
        let inv = unit_inv(unit);
        for m in [&mut self.d, &mut self.u] {
            for j in 0..m.cols() {
                let val = m.get(i, j) * unit;
                m.set(i, j, val);
            }
        }
        let m = &mut self.u_inv;
        for r in 0..m.rows() {
            let val = m.get(r, i) * &inv;
            m.set(r, i, val);
        }
    }
}

fn span(p: &LaurentPoly) -> i64 {
    p.degree().expect("span of zero polynomial")
}

/// Smith normal form over F[t±1], Euclidean under the span degree after
/// factoring out powers of t.
pub fn smith_normal_form(a: &PolyMatrix) -> SmithDecomposition {
    let field = a.field();
    let (rows, cols) = (a.rows(), a.cols());
    let mut w = Work {
        d: a.clone(),
        u: PolyMatrix::identity(rows, field),
        v: PolyMatrix::identity(cols, field),
        u_inv: PolyMatrix::identity(rows, field),
        v_inv: PolyMatrix::identity(cols, field),
        field,
        ops: 0,
    };

    let steps = rows.min(cols);
    let mut divisors = Vec::new();
    for p in 0..steps {
        // Pivot: nonzero entry of minimal span degree in the remaining block.
        let mut pivot: Option<(usize, usize, i64)> = None;
        for i in p..rows {
            for j in p..cols {
                let e = w.d.get(i, j);
                if e.is_zero() {
                    continue;
                }
                let s = span(e);
                if pivot.map_or(true, |(_, _, best)| s < best) {
                    pivot = Some((i, j, s));
                }
            }
        }
        let Some((pi, pj, _)) = pivot else {
            break;
        };
        w.row_swap(p, pi);
        w.col_swap(p, pj);

        'reduce: loop {
            // Clear the pivot column.
            for i in p + 1..rows {
                if w.d.get(i, p).is_zero() {
                    continue;
                }
                let (q, r) = w.d.get(i, p).div_rem(w.d.get(p, p));
                w.row_axpy(i, p, &-&q);
                if !r.is_zero() {
                    w.row_swap(p, i);
                    continue 'reduce;
                }
            }
            // Clear the pivot row.
            for j in p + 1..cols {
                if w.d.get(p, j).is_zero() {
                    continue;
                }
                let (q, r) = w.d.get(p, j).div_rem(w.d.get(p, p));
                w.col_axpy(j, p, &-&q);
                if !r.is_zero() {
                    w.col_swap(p, j);
                    continue 'reduce;
                }
            }
            // Divisibility: the pivot must divide every remaining entry.
            for i in p + 1..rows {
                for j in p + 1..cols {
                    if !w.d.get(p, p).divides(w.d.get(i, j)) {
                        w.row_axpy(p, i, &LaurentPoly::one(w.field));
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        // Normalize the pivot to its canonical unit-class representative.
        let piv = w.d.get(p, p).clone();
        let unit = LaurentPoly::monomial(piv.leading().clone(), piv.min_exp().unwrap());
        w.row_scale(p, &unit_inv(&unit));
        divisors.push(w.d.get(p, p).clone());
    }

    debug_assert!(divisors.windows(2).all(|pair| pair[0].divides(&pair[1])));
    debug_assert!(divisors.iter().all(|d| d.is_canonical()));
    SmithDecomposition {
        u: w.u,
        d: w.d,
        v: w.v,
        u_inv: w.u_inv,
        v_inv: w.v_inv,
        divisors,
        ops: w.ops,
    }
}

/// The order data of the module presented as the cokernel of a map into
/// F[t±1]^ambient whose matrix (columns = relations) is `a`.
#[derive(Clone, Debug)]
pub struct CokernelOrder {
    /// Zero when the cokernel has positive free rank, else the product of the
    /// elementary divisors, canonical.
    pub order: LaurentPoly,
    /// Product of the nonzero divisors regardless of rank (torsion part).
    pub torsion_order: LaurentPoly,
    pub free_rank: usize,
    pub divisors: Vec<LaurentPoly>,
    pub ops: u64,
}

pub fn coker_order(a: &PolyMatrix, ambient_rank: usize) -> Result<CokernelOrder> {
    if a.rows() != ambient_rank {
        return Err(Error::AmbientRankMismatch { rows: a.rows(), ambient: ambient_rank });
    }
    let snf = smith_normal_form(a);
    let field = a.field();
    let torsion = snf
        .divisors
        .iter()
        .fold(LaurentPoly::one(field), |acc, d| &acc * d)
        .canonical();
    let free_rank = ambient_rank - snf.rank();
    let order = if free_rank > 0 {
        LaurentPoly::zero(field)
    } else {
        torsion.clone()
    };
    Ok(CokernelOrder {
        order,
        torsion_order: torsion,
        free_rank,
        divisors: snf.divisors,
        ops: snf.ops,
    })
}
