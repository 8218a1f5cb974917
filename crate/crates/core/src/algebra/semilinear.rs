//! Frobenius-semilinear endomorphisms `x -> A * sigma^t(x)` of `k^n`.

use crate::algebra::field::{FieldSpec, Fq};
use crate::algebra::matrix::{Matrix, Subspace};
use crate::error::{Error, Result};

/// The map `x -> A * sigma^t(x)`, where `sigma` raises coordinates to the
/// `p`-th power. `t = 1` is Frobenius-linear, `t = -1` is `1/p`-linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    field: FieldSpec,
    matrix: Matrix,
    twist: i64,
}

impl SemilinearMap {
    pub fn new(field: FieldSpec, matrix: Matrix, twist: i64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "semilinear endomorphism needs a square matrix, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(SemilinearMap { field, matrix, twist })
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        SemilinearMap { field, matrix: Matrix::identity(n), twist: 0 }
    }

    pub fn zero(field: FieldSpec, n: usize, twist: i64) -> Self {
        SemilinearMap { field, matrix: Matrix::zeros(n, n), twist }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// The twist as accumulated through compositions.
    pub fn twist(&self) -> i64 {
        self.twist
    }

    /// The twist reduced into `[0, m)`; this is all the map depends on.
    pub fn twist_mod(&self) -> i64 {
        self.twist.rem_euclid(self.field.degree() as i64)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// `self ∘ other`: `(A, t) ∘ (B, s) = (A * sigma^t(B), t + s)`.
    pub fn compose(&self, other: &SemilinearMap) -> Result<SemilinearMap> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose maps of dimension {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        let twisted = other.matrix.frobenius(self.twist, &self.field);
        Ok(SemilinearMap {
            field: self.field.clone(),
            matrix: self.matrix.mul(&twisted, &self.field)?,
            twist: self.twist + other.twist,
        })
    }

    /// The `n`-fold self-composition (`n = 0` gives the identity).
    pub fn power(&self, n: usize) -> SemilinearMap {
        let mut acc = SemilinearMap::identity(self.field.clone(), self.dim());
        for _ in 0..n {
            acc = self.compose(&acc).expect("same field and dimension");
        }
        acc
    }

    pub fn apply(&self, x: &[Fq]) -> Vec<Fq> {
        let k = &self.field;
        let sx: Vec<Fq> = x.iter().map(|&c| k.frobenius(c, self.twist)).collect();
        (0..self.dim())
            .map(|i| self.matrix.row(i).iter().zip(&sx).fold(Fq::ZERO, |acc, (&a, &b)| k.add(acc, k.mul(a, b))))
            .collect()
    }

    /// Rank of the underlying matrix (sigma is bijective).
    pub fn rank(&self) -> usize {
        self.matrix.rank(&self.field)
    }

    pub fn kernel(&self) -> Subspace {
        // A sigma^t(x) = 0  <=>  x in sigma^{-t}(ker A)
        let k = &self.field;
        Subspace::span(&self.matrix.kernel(k).frobenius(-self.twist, k), k)
    }

    pub fn image_space(&self) -> Subspace {
        self.image(&Subspace::full(self.dim())).expect("matching dimension")
    }

    /// `f(W)`.
    pub fn image(&self, w: &Subspace) -> Result<Subspace> {
        self.check_ambient(w)?;
        let k = &self.field;
        let twisted = w.basis().frobenius(self.twist, k);
        Ok(Subspace::span(&twisted.mul(&self.matrix.transpose(), k)?, k))
    }

    /// `f^{-1}(W) = {x : f(x) in W}`.
    pub fn preimage(&self, w: &Subspace) -> Result<Subspace> {
        self.check_ambient(w)?;
        let k = &self.field;
        // A y in W  <=>  N A y = 0 for N spanning the annihilator of W.
        let constraints = w.annihilator(k).basis().mul(&self.matrix, k)?;
        Ok(Subspace::span(&constraints.kernel(k).frobenius(-self.twist, k), k))
    }

    fn check_ambient(&self, w: &Subspace) -> Result<()> {
        if w.ambient_dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "subspace of k^{} under a map on k^{}",
                w.ambient_dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Rank of the `iterations`-fold self-composition, i.e. `dim f^n(k^n)`.
    ///
    /// Iterated images are nested, so once two consecutive dimensions agree the
    /// image is fixed and the remaining iterations are skipped.
    pub fn stable_rank(&self, iterations: usize) -> usize {
        let mut current = Subspace::full(self.dim());
        for _ in 0..iterations {
            let next = self.image(&current).expect("matching dimension");
            if next.dim() == current.dim() {
                return next.dim();
            }
            current = next;
        }
        current.dim()
    }

    /// Dimension of the kernel of the `n`-fold self-composition.
    pub fn kernel_power_dim(&self, n: usize) -> usize {
        self.dim() - self.power(n).rank()
    }
}
