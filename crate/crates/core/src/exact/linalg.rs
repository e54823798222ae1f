//! Exact dense linear algebra: Gauss-Jordan elimination over a field scalar
//! with full solution-set reporting (unique / parametrized family /
//! inconsistent). No floating point, no pivot tolerance: a pivot is any
//! nonzero entry.

use num_traits::Zero;

use super::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T: Scalar> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::new(rows, cols, vec![T::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self
    where
        T: num_traits::One,
    {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for j in 0..self.cols {
                    acc = acc + self[(i, j)].clone() * v[j].clone();
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl<T: Scalar> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Scalar> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

/// Solution set of an exact linear system.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearOutcome<T: Scalar> {
    Unique(Vec<T>),
    /// A particular solution plus a basis of the homogeneous nullspace.
    Family {
        particular: Vec<T>,
        nullspace: Vec<Vec<T>>,
    },
    Inconsistent,
}

impl<T: Scalar> LinearOutcome<T> {
    pub fn unique(self) -> Option<Vec<T>> {
        match self {
            LinearOutcome::Unique(v) => Some(v),
            _ => None,
        }
    }
}

/// Reduced row echelon form in place; returns the pivot column per row.
fn rref<T: Scalar>(m: &mut Matrix<T>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m[(row, col)].clone();
        for j in col..m.cols {
            m[(row, j)] = m[(row, j)].clone() / inv.clone();
        }
        for r in 0..m.rows {
            if r == row || m[(r, col)].is_zero() {
                continue;
            }
            let factor = m[(r, col)].clone();
            for j in col..m.cols {
                let t = m[(r, j)].clone() - factor.clone() * m[(row, j)].clone();
                m[(r, j)] = t;
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Exact solve of `matrix * x = rhs`; reports rank through the outcome shape.
pub fn solve<T: Scalar>(matrix: &Matrix<T>, rhs: &[T]) -> LinearOutcome<T> {
    assert_eq!(matrix.rows(), rhs.len());
    let n = matrix.cols();
    let mut aug = Matrix::zeros(matrix.rows(), n + 1);
    for i in 0..matrix.rows() {
        for j in 0..n {
            aug[(i, j)] = matrix[(i, j)].clone();
        }
        aug[(i, n)] = rhs[i].clone();
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return LinearOutcome::Inconsistent;
    }
    let rank = pivots.len();
    let mut particular = vec![T::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    if rank == n {
        return LinearOutcome::Unique(particular);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let nullspace = free
        .iter()
        .map(|&fc| {
            let mut v = vec![T::zero(); n];
            v[fc] = T::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -aug[(r, fc)].clone();
            }
            v
        })
        .collect();
    LinearOutcome::Family {
        particular,
        nullspace,
    }
}

/// Basis of the nullspace of `matrix`.
pub fn nullspace<T: Scalar>(matrix: &Matrix<T>) -> Vec<Vec<T>> {
    match solve(matrix, &vec![T::zero(); matrix.rows()]) {
        LinearOutcome::Unique(_) => vec![],
        LinearOutcome::Family { nullspace, .. } => nullspace,
        LinearOutcome::Inconsistent => unreachable!("homogeneous system is consistent"),
    }
}

/// Exact Gaussian elimination over the rationals.
pub fn rational_linear_solve(matrix: &Matrix<Rational>, rhs: &[Rational]) -> LinearOutcome<Rational> {
    solve(matrix, rhs)
}
