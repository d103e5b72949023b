use num_traits::Zero;

use super::echelon::reduced_rows;
use super::{Rational, SparseVector, Subspace};

/// A dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::from_integer(1.into()));
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience for small integer matrices.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn from_sparse_rows(cols: usize, rows: &[SparseVector]) -> Self {
        let mut m = Matrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols);
            for (j, v) in r.iter() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_sparse_columns(rows: usize, columns: &[SparseVector]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.dim(), rows);
            for (i, v) in c.iter() {
                m.set(i, j, v.clone());
            }
        }
        m
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

    pub fn sparse_rows(&self) -> Vec<SparseVector> {
        (0..self.rows).map(|i| SparseVector::from_dense(self.row(i))).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

/// Result of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    /// Nonzero rows of the reduced form, one per pivot.
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

pub fn rref(m: &Matrix) -> Rref {
    let sparse = m.sparse_rows();
    let rows = reduced_rows(m.cols(), &sparse);
    let pivots: Vec<usize> = rows.iter().map(|r| r.leading().expect("nonzero").0).collect();
    Rref {
        matrix: Matrix::from_sparse_rows(m.cols(), &rows),
        rank: pivots.len(),
        pivots,
    }
}

/// Null space of `m` acting on column vectors; ambient dimension `m.cols()`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    kernel_of_rows(m.cols(), &m.sparse_rows())
}

pub(crate) fn kernel_of_rows(cols: usize, rows: &[SparseVector]) -> Subspace {
    let reduced = reduced_rows(cols, rows);
    let mut pivot_of = vec![None; cols];
    for (i, r) in reduced.iter().enumerate() {
        pivot_of[r.leading().expect("nonzero").0] = Some(i);
    }
    let mut generators = Vec::new();
    for free in (0..cols).filter(|c| pivot_of[*c].is_none()) {
        let mut entries = vec![(free, Rational::from_integer(1.into()))];
        for r in &reduced {
            if let Some(v) = r.get(free) {
                entries.push((r.leading().unwrap().0, -v.clone()));
            }
        }
        generators.push(SparseVector::from_entries(cols, entries));
    }
    Subspace::span(cols, &generators).expect("generators live in the ambient space")
}
