//! Small dense matrices over the rationals.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::exactseq::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// General solution `particular + span(kernel)` of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: alloc::vec![Rational::zero(); rows * cols],
        }
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
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

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, x)| acc + a * x)
            })
            .collect()
    }

    /// `[A | b]`.
    pub fn augment(&self, b: &[Rational]) -> Matrix {
        assert_eq!(b.len(), self.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for j in 0..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(i, j) - &f * m.get(row, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `None` when `A x = b` is inconsistent.
    pub fn solve_affine(&self, b: &[Rational]) -> Option<AffineSolution> {
        let (r, pivots) = self.augment(b).rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut particular = alloc::vec![Rational::zero(); self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            particular[c] = r.get(i, self.cols).clone();
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = alloc::vec![Rational::zero(); self.cols];
                v[f] = Rational::from_integer(1.into());
                for (i, &c) in pivots.iter().enumerate() {
                    v[c] = -r.get(i, f).clone();
                }
                v
            })
            .collect();
        Some(AffineSolution { particular, kernel })
    }

    /// Positive semidefiniteness of a symmetric matrix.
    ///
    /// Symmetric Gaussian elimination: a negative pivot fails, a zero pivot
    /// passes only if the rest of its row is zero (otherwise a 2x2 minor is
    /// negative), and the eliminated Schur complement is checked recursively.
    pub fn is_psd(&self) -> bool {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut m = self.clone();
        for k in 0..n {
            let pivot = m.get(k, k).clone();
            if pivot.is_negative() {
                return false;
            }
            if pivot.is_zero() {
                if (k + 1..n).any(|j| !m.get(k, j).is_zero()) {
                    return false;
                }
                continue;
            }
            for i in k + 1..n {
                let f = m.get(i, k) / &pivot;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j) - &f * m.get(k, j);
                    m.set(i, j, v);
                }
            }
        }
        true
    }
}
