//! Dense matrices over the rationals with exact arithmetic.
//!
//! Everything here runs Gaussian elimination with `BigRational` entries, so
//! results are exact and independent of conditioning.  Sizes stay modest
//! (points and classes of corpus schemes), which keeps coefficient growth
//! manageable without fraction-free tricks.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scheme::Scheme;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) + other.get(i, j)
        })
    }

    pub fn sub(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.get(i, j) - other.get(i, j)
        })
    }

    pub fn scale(&self, c: &BigRational) -> QMatrix {
        QMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j) * c)
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn trace(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i).clone()).sum()
    }

    /// Reduced row echelon form and the list of pivot columns.
    pub fn rref(mut self) -> (QMatrix, Vec<usize>) {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(src) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for j in 0..self.cols {
                    self.data
                        .swap(src * self.cols + j, pivot_row * self.cols + j);
                }
            }
            let inv = self.get(pivot_row, col).recip();
            for j in col..self.cols {
                let v = self.get(pivot_row, j) * &inv;
                self.set(pivot_row, j, v);
            }
            for r in 0..self.rows {
                if r == pivot_row || self.get(r, col).is_zero() {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for j in col..self.cols {
                    let v = self.get(r, j) - &factor * self.get(pivot_row, j);
                    self.set(r, j, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        (self, pivots)
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().1.len()
    }

    /// A basis of the right kernel, one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (r, pivots) = self.clone().rref();
        let mut basis = Vec::new();
        let mut pivot_iter = pivots.iter().copied().peekable();
        let mut free_cols = Vec::new();
        for col in 0..self.cols {
            if pivot_iter.peek() == Some(&col) {
                pivot_iter.next();
            } else {
                free_cols.push(col);
            }
        }
        for &free in &free_cols {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let augmented = QMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        });
        let (r, pivots) = augmented.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| r.get(i, j + n).clone()))
    }

    pub fn det(&self) -> BigRational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
                return BigRational::zero();
            };
            if src != col {
                for j in 0..n {
                    m.data.swap(src * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col) / &pivot;
                for j in col..n {
                    let v = m.get(r, j) - &factor * m.get(col, j);
                    m.set(r, j, v);
                }
            }
        }
        det
    }
}

/// The matrix `sum coeffs[r] * A_r` over the rationals.
pub fn combine(sch: &Scheme, coeffs: &[BigRational]) -> QMatrix {
    assert_eq!(coeffs.len(), sch.s());
    let n = sch.n();
    QMatrix::from_fn(n, n, |x, y| coeffs[sch.color(x, y) as usize].clone())
}

/// Incremental row elimination over the rationals with dependency
/// tracking.
///
/// Each offered row carries a tag vector; stored rows maintain the
/// invariant `stored = sum tag[j] * offered_j`.  When a new row reduces to
/// zero the returned tag expresses that vanishing combination, which is how
/// the spectral code recovers annihilating polynomials from Krylov
/// sequences.
pub struct QReducer {
    cols: usize,
    rows: Vec<(Vec<BigRational>, Vec<BigRational>)>,
}

impl QReducer {
    pub fn new(cols: usize) -> Self {
        QReducer {
            cols,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Offer `row` with tag `tag`.  Returns `Some(combination)` if the row
    /// is dependent on earlier offers, `None` if it was absorbed.
    pub fn offer(
        &mut self,
        mut row: Vec<BigRational>,
        mut tag: Vec<BigRational>,
    ) -> Option<Vec<BigRational>> {
        assert_eq!(row.len(), self.cols);
        for (stored, stored_tag) in &self.rows {
            let lead = stored
                .iter()
                .position(|v| !v.is_zero())
                .expect("stored rows are nonzero");
            if row[lead].is_zero() {
                continue;
            }
            let factor = &row[lead] / &stored[lead];
            for (a, b) in row.iter_mut().zip(stored) {
                if !b.is_zero() {
                    *a -= &factor * b;
                }
            }
            for (a, b) in tag.iter_mut().zip(stored_tag) {
                *a -= &factor * b;
            }
        }
        if row.iter().all(Zero::is_zero) {
            return Some(tag);
        }
        // Keep stored rows ordered by leading column so a single pass
        // suffices for later offers.
        let lead = row.iter().position(|v| !v.is_zero()).unwrap();
        let at = self
            .rows
            .partition_point(|(r, _)| r.iter().position(|v| !v.is_zero()).unwrap() < lead);
        self.rows.insert(at, (row, tag));
        None
    }
}
