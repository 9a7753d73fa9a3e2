use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact integer matrix; used for abelianization and φ derivation only.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let entries = rows.into_iter().flatten().map(BigInt::from).collect();
        IntMatrix { rows: r, cols: c, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert!(self.cols == rhs.rows);
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::zero();
                for l in 0..self.cols {
                    acc += self.get(i, l) * rhs.get(l, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn det(&self) -> BigInt {
        assert!(self.rows == self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero());
                    m[i][j] = q;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        sign * m[n - 1][n - 1].clone()
    }
}

/// U·A·V = D over the integers with unimodular U, V. `diagonal` is the full
/// diagonal of D (nonzero divisibility chain, then zeros); `divisors` the
/// nonzero prefix.
#[derive(Clone, Debug)]
pub struct IntSmith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub diagonal: Vec<BigInt>,
    pub divisors: Vec<BigInt>,
}

impl IntSmith {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

pub fn int_smith(a: &IntMatrix) -> IntSmith {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    let row_swap = |m: &mut IntMatrix, a: usize, b: usize| {
        for j in 0..m.cols() {
            let x = m.get(a, j).clone();
            let y = m.get(b, j).clone();
            m.set(a, j, y);
            m.set(b, j, x);
        }
    };
    let col_swap = |m: &mut IntMatrix, a: usize, b: usize| {
        for i in 0..m.rows() {
            let x = m.get(i, a).clone();
            let y = m.get(i, b).clone();
            m.set(i, a, y);
            m.set(i, b, x);
        }
    };

    let steps = rows.min(cols);
    for p in 0..steps {
        let mut pivot: Option<(usize, usize)> = None;
        for i in p..rows {
            for j in p..cols {
                if d.get(i, j).is_zero() {
                    continue;
                }
                let better = pivot.map_or(true, |(bi, bj)| {
                    d.get(i, j).abs() < d.get(bi, bj).abs()
                });
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else {
            break;
        };
        if pi != p {
            row_swap(&mut d, p, pi);
            row_swap(&mut u, p, pi);
        }
        if pj != p {
            col_swap(&mut d, p, pj);
            col_swap(&mut v, p, pj);
        }

        'reduce: loop {
            for i in p + 1..rows {
                if d.get(i, p).is_zero() {
                    continue;
                }
                let (q, r) = d.get(i, p).div_rem(d.get(p, p));
                for j in 0..cols {
                    let val = d.get(i, j) - &q * d.get(p, j);
                    d.set(i, j, val);
                }
                for j in 0..rows {
                    let val = u.get(i, j) - &q * u.get(p, j);
                    u.set(i, j, val);
                }
                if !r.is_zero() {
                    row_swap(&mut d, p, i);
                    row_swap(&mut u, p, i);
                    continue 'reduce;
                }
            }
            for j in p + 1..cols {
                if d.get(p, j).is_zero() {
                    continue;
                }
                let (q, r) = d.get(p, j).div_rem(d.get(p, p));
                for i in 0..rows {
                    let val = d.get(i, j) - &q * d.get(i, p);
                    d.set(i, j, val);
                }
                for i in 0..cols {
                    let val = v.get(i, j) - &q * v.get(i, p);
                    v.set(i, j, val);
                }
                if !r.is_zero() {
                    col_swap(&mut d, p, j);
                    col_swap(&mut v, p, j);
                    continue 'reduce;
                }
            }
            for i in p + 1..rows {
                for j in p + 1..cols {
                    if !d.get(i, j).is_multiple_of(d.get(p, p)) {
                        for jj in 0..cols {
                            let val = d.get(p, jj) + d.get(i, jj);
                            d.set(p, jj, val);
                        }
                        for jj in 0..rows {
                            let val = u.get(p, jj) + u.get(i, jj);
                            u.set(p, jj, val);
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }

        if d.get(p, p).is_negative() {
            for j in 0..cols {
                let val = -d.get(p, j);
                d.set(p, j, val);
            }
            for j in 0..rows {
                let val = -u.get(p, j);
                u.set(p, j, val);
            }
        }
    }

    let diagonal: Vec<BigInt> = (0..steps).map(|i| d.get(i, i).clone()).collect();
    let divisors: Vec<BigInt> = diagonal.iter().take_while(|x| !x.is_zero()).cloned().collect();
    debug_assert!(divisors.windows(2).all(|p| p[1].is_multiple_of(&p[0])));
    IntSmith { u, d, v, diagonal, divisors }
}

/// Basis columns of the right kernel of A over Z, read off the Smith form.
pub fn int_kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = int_smith(a);
    let r = snf.rank();
    (r..a.cols())
        .map(|j| (0..a.cols()).map(|i| snf.v.get(i, j).clone()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_entry_is_infinite_cyclic() {
        let a = IntMatrix::from_rows(vec![vec![0]]);
        let snf = int_smith(&a);
        assert_eq!(snf.diagonal, vec![BigInt::zero()]);
        assert!(snf.divisors.is_empty());
    }

    #[test]
    fn diag_two_three_gives_one_six() {
        let a = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]);
        let snf = int_smith(&a);
        assert_eq!(snf.divisors, vec![BigInt::from(1), BigInt::from(6)]);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
    }

    #[test]
    fn reconstruction_on_rectangular() {
        let a = IntMatrix::from_rows(vec![vec![4, 6, 2], vec![2, 2, 2]]);
        let snf = int_smith(&a);
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d);
        assert_eq!(snf.u.det().abs(), BigInt::one());
        assert_eq!(snf.v.det().abs(), BigInt::one());
        for w in snf.divisors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn kernel_of_sum_map() {
        // (x, y) ↦ x + y has kernel spanned by (1, -1) up to sign.
        let a = IntMatrix::from_rows(vec![vec![1, 1]]);
        let basis = int_kernel_basis(&a);
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert_eq!(&v[0] + &v[1], BigInt::zero());
        assert_eq!(v[0].abs(), BigInt::one());
    }
}
