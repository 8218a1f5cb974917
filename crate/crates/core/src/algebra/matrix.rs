//! Dense matrices and subspaces over a [`FieldSpec`], with exact Gaussian elimination.

use std::fmt;

use crate::algebra::field::{FieldSpec, Fq};
use crate::error::{Error, Result};

/// Row-major dense matrix. Matrices act on column vectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Fq>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u64>> = (0..self.rows).map(|i| self.row(i).iter().map(|c| c.index()).collect()).collect();
        write!(f, "Matrix{rows:?}")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// Build from explicit rows; all rows must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Fq>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    /// Build from small integers (reduced into the prime field).
    pub fn from_ints(k: &FieldSpec, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&n| k.from_int(n)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Fq {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Fq) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fq] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Fq>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix, k: &FieldSpec) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = k.add(out.data[idx], k.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    /// Apply `sigma^t` to every entry.
    pub fn frobenius(&self, t: i64, k: &FieldSpec) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&a| k.frobenius(a, t)).collect() }
    }

    /// Block-diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn stack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                self.cols, other.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self, k: &FieldSpec) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let v = k.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = k.sub(m.get(i, j), k.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, k: &FieldSpec) -> usize {
        self.rref(k).1.len()
    }

    /// Basis (as rows) of the null space `{x : self * x = 0}`.
    pub fn kernel(&self, k: &FieldSpec) -> Matrix {
        let (r, pivots) = self.rref(k);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            basis.set(b, fc, Fq::ONE);
            for (pr, &pc) in pivots.iter().enumerate() {
                basis.set(b, pc, k.neg(r.get(pr, fc)));
            }
        }
        basis
    }
}

/// A subspace of `k^n`, held as the nonzero rows of a reduced row echelon
/// basis. The form is canonical, so equality of values is equality of subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of the rows of `generators`.
    pub fn span(generators: &Matrix, k: &FieldSpec) -> Subspace {
        let (r, pivots) = generators.rref(k);
        let n = generators.cols();
        let data = r.data[..pivots.len() * n].to_vec();
        Subspace { basis: Matrix { rows: pivots.len(), cols: n, data } }
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(0, n) }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace { basis: Matrix::identity(n) }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn sum(&self, other: &Subspace, k: &FieldSpec) -> Result<Subspace> {
        Ok(Subspace::span(&self.basis.stack(&other.basis)?, k))
    }

    /// `{y : <w, y> = 0 for all w}` under the standard pairing.
    pub fn annihilator(&self, k: &FieldSpec) -> Subspace {
        Subspace::span(&self.basis.kernel(k), k)
    }

    pub fn intersect(&self, other: &Subspace, k: &FieldSpec) -> Result<Subspace> {
        Ok(self.annihilator(k).sum(&other.annihilator(k), k)?.annihilator(k))
    }

    pub fn contains(&self, other: &Subspace, k: &FieldSpec) -> Result<bool> {
        Ok(self.sum(other, k)?.dim() == self.dim())
    }
}
