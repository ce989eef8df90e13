//! Dense symmetric matrices over an exact integer scalar.

use std::fmt;

use num_rational::Ratio;
use num_traits::Zero;
use thiserror::Error;

use crate::scalar::IntScalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("not symmetric: entries ({row},{col}) and ({col},{row}) differ")]
    NotSymmetric { row: usize, col: usize },
    #[error("row {row} has length {found}, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
}

/// Dense symmetric matrix. Symmetry is a representation invariant: every
/// write goes through [`SymMatrix::set`], which mirrors the entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

impl<T: IntScalar> SymMatrix<T> {
    pub fn zeros(size: usize) -> Self {
        SymMatrix {
            size,
            entries: vec![T::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds the matrix from `f`, consulted only for `i <= j`; the lower
    /// triangle is mirrored.
    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(size);
        for i in 0..size {
            for j in i..size {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let size = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(MatrixError::RaggedRow {
                    row: i,
                    found: row.len(),
                    expected: size,
                });
            }
        }
        for i in 0..size {
            for j in i + 1..size {
                if rows[i][j] != rows[j][i] {
                    return Err(MatrixError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(SymMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience for literal test and corpus data.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MatrixError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from(v)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.entries[i * self.size + j] = value.clone();
        self.entries[j * self.size + i] = value;
    }

    /// Adds `delta` to the entry at `(i, j)` and its mirror.
    pub fn bump(&mut self, i: usize, j: usize, delta: T) {
        let v = self.get(i, j).clone() + delta;
        self.set(i, j, v);
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self::from_fn(self.size, |i, j| {
            self.get(i, j).clone() + other.get(i, j).clone()
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size);
        Self::from_fn(self.size, |i, j| {
            self.get(i, j).clone() - other.get(i, j).clone()
        })
    }

    pub fn scaled(&self, factor: i64) -> Self {
        let f = T::from(factor);
        Self::from_fn(self.size, |i, j| self.get(i, j).clone() * f.clone())
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.size);
        (0..self.size)
            .map(|i| {
                (0..self.size).fold(T::zero(), |acc, j| {
                    acc + self.get(i, j).clone() * v[j].clone()
                })
            })
            .collect()
    }

    /// Principal submatrix on the given (distinct) indices.
    pub fn principal_submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| {
            self.get(indices[i], indices[j]).clone()
        })
    }

    /// Appends one symmetric row/column with the given off-diagonal border
    /// and diagonal corner.
    pub fn bordered(&self, border: &[T], corner: T) -> Self {
        assert_eq!(border.len(), self.size);
        let m = self.size;
        Self::from_fn(m + 1, |i, j| {
            if j < m {
                self.get(i, j).clone()
            } else if i < m {
                border[i].clone()
            } else {
                corner.clone()
            }
        })
    }

    /// The congruent matrix `Uᵀ·M·U` for a square (not necessarily
    /// symmetric) transform given by rows.
    pub fn congruence(&self, u: &[Vec<T>]) -> Self {
        let m = self.size;
        assert_eq!(u.len(), m);
        // mu = M·U
        let mu: Vec<Vec<T>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (0..m).fold(T::zero(), |acc, k| {
                            acc + self.get(i, k).clone() * u[k][j].clone()
                        })
                    })
                    .collect()
            })
            .collect();
        Self::from_fn(m, |i, j| {
            (0..m).fold(T::zero(), |acc, k| acc + u[k][i].clone() * mu[k][j].clone())
        })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination with row
    /// pivoting. The empty matrix has determinant one.
    pub fn det(&self) -> T {
        let m = self.size;
        if m == 0 {
            return T::one();
        }
        let mut w = self.rows();
        let mut negated = false;
        let mut prev = T::one();
        for k in 0..m - 1 {
            if w[k][k].is_zero() {
                let Some(r) = (k + 1..m).find(|&r| !w[r][k].is_zero()) else {
                    return T::zero();
                };
                w.swap(k, r);
                negated = !negated;
            }
            for i in k + 1..m {
                for j in k + 1..m {
                    // every division here is exact
                    let num = w[i][j].clone() * w[k][k].clone() - w[i][k].clone() * w[k][j].clone();
                    w[i][j] = num / prev.clone();
                }
                w[i][k] = T::zero();
            }
            prev = w[k][k].clone();
        }
        let d = w[m - 1][m - 1].clone();
        if negated {
            -d
        } else {
            d
        }
    }
}

/// Solves `M·x = rhs` exactly over the rationals. `None` when `M` is
/// singular.
pub fn solve_rational<T: IntScalar>(m: &SymMatrix<T>, rhs: &[T]) -> Option<Vec<Ratio<T>>> {
    let n = m.size();
    assert_eq!(rhs.len(), n);
    let mut a: Vec<Vec<Ratio<T>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Ratio::from_integer(m.get(i, j).clone()))
                .chain(std::iter::once(Ratio::from_integer(rhs[i].clone())))
                .collect()
        })
        .collect();
    for k in 0..n {
        let pivot_row = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot_row);
        let pivot = a[k][k].clone();
        for j in k..=n {
            a[k][j] = a[k][j].clone() / pivot.clone();
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let f = a[i][k].clone();
            for j in k..=n {
                let sub = f.clone() * a[k][j].clone();
                a[i][j] = a[i][j].clone() - sub;
            }
        }
    }
    Some(a.into_iter().map(|row| row[n].clone()).collect())
}

impl<T: fmt::Display> fmt::Display for SymMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size {
            write!(f, "[")?;
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entries[i * self.size + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::det_cofactor;
    use crate::Int;

    #[test]
    fn identity_det_is_one() {
        let m: SymMatrix<i64> = SymMatrix::identity(3);
        assert_eq!(m.det(), 1);
    }

    #[test]
    fn six_one_plus_part_det() {
        // frozen from 2x2 cofactor expansion: (-10)(-4) - 2*2 = 36
        let m: SymMatrix<i64> = SymMatrix::from_i64_rows(&[&[-10, 2], &[2, -4]]).unwrap();
        assert_eq!(m.det(), 36);
    }

    #[test]
    fn six_one_full_det_is_odd_nine() {
        let rows = vec![
            vec![-3, 1, 2, 0],
            vec![1, -2, 0, 0],
            vec![2, 0, -3, 1],
            vec![0, 0, 1, -2],
        ];
        let oracle = det_cofactor(&rows);
        assert_eq!(oracle, 9);
        let m: SymMatrix<Int> =
            SymMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
                .unwrap();
        assert_eq!(m.det(), Int::from(oracle));
        assert_eq!(oracle.rem_euclid(2), 1);
    }

    #[test]
    fn zero_pivot_needs_row_swap() {
        let m: SymMatrix<i64> = SymMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(m.det(), -1);
    }

    #[test]
    fn non_symmetric_rows_rejected() {
        let err = SymMatrix::<i64>::from_i64_rows(&[&[0, 1], &[2, 0]]).unwrap_err();
        assert_eq!(err, MatrixError::NotSymmetric { row: 0, col: 1 });
    }

    #[test]
    fn bordered_appends_row_and_column() {
        let m: SymMatrix<i64> = SymMatrix::from_i64_rows(&[&[-1]]).unwrap();
        let b = m.bordered(&[1], 0);
        assert_eq!(b, SymMatrix::from_i64_rows(&[&[-1, 1], &[1, 0]]).unwrap());
    }

    #[test]
    fn solve_recovers_inverse_action() {
        let m: SymMatrix<i64> = SymMatrix::from_i64_rows(&[&[2, 1], &[1, 3]]).unwrap();
        let x = solve_rational(&m, &[1, 0]).unwrap();
        // inverse of [[2,1],[1,3]] applied to e1 is [3/5, -1/5]
        assert_eq!(x[0], Ratio::new(3, 5));
        assert_eq!(x[1], Ratio::new(-1, 5));
    }

    #[test]
    fn solve_detects_singular() {
        let m: SymMatrix<i64> = SymMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]).unwrap();
        assert!(solve_rational(&m, &[1, 0]).is_none());
    }

    #[test]
    fn bareiss_matches_cofactor_oracle() {
        // deterministic sweep over a few handmade matrices
        let cases: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![5]],
            vec![vec![0, 2, 1], vec![2, 0, 3], vec![1, 3, 0]],
            vec![
                vec![-8, 2, 0, 2],
                vec![2, -4, 2, 0],
                vec![0, 2, 0, 0],
                vec![2, 0, 0, -8],
            ],
            vec![
                vec![1, 2, 3, 4],
                vec![2, 0, 1, -1],
                vec![3, 1, -2, 0],
                vec![4, -1, 0, 5],
            ],
        ];
        for rows in cases {
            let m: SymMatrix<i64> = SymMatrix::from_rows(rows.clone()).unwrap();
            assert_eq!(m.det(), det_cofactor(&rows));
        }
    }
}
