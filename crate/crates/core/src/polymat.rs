use crate::field::{Field, FieldElem};
use crate::laurent::LaurentPoly;
use std::fmt;

/// Matrix over F[t±1], row-major, dimensions fixed at construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<LaurentPoly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        PolyMatrix {
            rows,
            cols,
            field,
            entries: vec![LaurentPoly::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one(field));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert!(e.field() == field, "entry field mismatch at ({i},{j})");
                entries.push(e);
            }
        }
        PolyMatrix { rows, cols, field, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        assert!(v.field() == self.field, "entry field mismatch");
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.field, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert!(self.cols == rhs.rows, "shape mismatch {}x{} * {}x{}", self.rows, self.cols, rhs.rows, rhs.cols);
        assert!(self.field == rhs.field, "field mismatch in matrix product");
        Self::from_fn(self.rows, rhs.cols, self.field, |i, j| {
            let mut acc = LaurentPoly::zero(self.field);
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                acc = &acc + &(a * rhs.get(l, j));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols && self.field == rhs.field);
        Self::from_fn(self.rows, self.cols, self.field, |i, j| self.get(i, j) + rhs.get(i, j))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols && self.field == rhs.field);
        Self::from_fn(self.rows, self.cols, self.field, |i, j| self.get(i, j) - rhs.get(i, j))
    }

    /// Stack vertically: self on top of other.
    pub fn vstack(&self, other: &Self) -> Self {
        assert!(self.cols == other.cols && self.field == other.field);
        Self::from_fn(self.rows + other.rows, self.cols, self.field, |i, j| {
            if i < self.rows {
                self.get(i, j).clone()
            } else {
                other.get(i - self.rows, j).clone()
            }
        })
    }

    /// Copy of the submatrix with the given column range removed.
    pub fn drop_cols(&self, start: usize, len: usize) -> Self {
        assert!(start + len <= self.cols);
        Self::from_fn(self.rows, self.cols - len, self.field, |i, j| {
            let jj = if j < start { j } else { j + len };
            self.get(i, jj).clone()
        })
    }

    pub fn submatrix(&self, row_range: std::ops::Range<usize>, col_range: std::ops::Range<usize>) -> Self {
        Self::from_fn(row_range.len(), col_range.len(), self.field, |i, j| {
            self.get(row_range.start + i, col_range.start + j).clone()
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact in any
    /// integral domain with exact division, which F[t±1] is.
    pub fn det(&self) -> LaurentPoly {
        assert!(self.rows == self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return LaurentPoly::one(self.field);
        }
        let mut m: Vec<Vec<LaurentPoly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev = LaurentPoly::one(self.field);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return LaurentPoly::zero(self.field);
                };
                m.swap(k, swap);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num.exact_div(&prev);
                }
                m[i][k] = LaurentPoly::zero(self.field);
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign_flip {
            -&d
        } else {
            d
        }
    }

    /// Rank over the fraction field F(t), by Gaussian elimination with
    /// polynomial pivots (cross-multiplication keeps everything in F[t±1]).
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<LaurentPoly>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..self.cols {
            let Some(piv) = (row..self.rows).find(|&i| !m[i][col].is_zero()) else {
                continue;
            };
            m.swap(row, piv);
            for i in row + 1..self.rows {
                if m[i][col].is_zero() {
                    continue;
                }
                let a = m[row][col].clone();
                let b = m[i][col].clone();
                for j in col..self.cols {
                    m[i][j] = &(&m[i][j] * &a) - &(&m[row][j] * &b);
                }
            }
            row += 1;
            rank += 1;
            if row == self.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[ ")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, " ]")?;
        }
        Ok(())
    }
}

/// Matrix with constant field entries (representation images live here).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElem>,
}

impl FieldMatrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        FieldMatrix { rows, cols, field, entries: vec![field.zero(); rows * cols] }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> FieldElem) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        FieldMatrix { rows, cols, field, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert!(self.cols == rhs.rows && self.field == rhs.field);
        Self::from_fn(self.rows, rhs.cols, self.field, |i, j| {
            let mut acc = self.field.zero();
            for l in 0..self.cols {
                acc = &acc + &(self.get(i, l) * rhs.get(l, j));
            }
            acc
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.field, |i, j| self.get(j, i).clone())
    }

    /// Apply to a column vector.
    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert!(v.len() == self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = &acc + &(self.get(i, j) * x);
                }
                acc
            })
            .collect()
    }

    pub fn scaled(&self, c: &FieldElem) -> Self {
        Self::from_fn(self.rows, self.cols, self.field, |i, j| self.get(i, j) * c)
    }

    /// Promote to a Laurent matrix scaled by t^exp.
    pub fn scaled_t_power(&self, exp: i64) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, self.field, |i, j| {
            let c = self.get(i, j);
            if c.is_zero() {
                LaurentPoly::zero(self.field)
            } else {
                LaurentPoly::monomial(c.clone(), exp)
            }
        })
    }
}
