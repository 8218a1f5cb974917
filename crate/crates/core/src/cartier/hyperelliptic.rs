use crate::algebra::{FieldSpec, Fq, Matrix, Poly, SemilinearMap};
use crate::cartier::CurveInvariants;
use crate::error::{Error, Result};

/// Cap on `deg f * (p - 1) / 2`, the degree of the power expanded for the
/// Cartier-Manin matrix.
const MAX_EXPANSION_DEGREE: u64 = 1 << 22;

/// `y^2 = f(x)` over a field of odd characteristic, `f` squarefree of degree
/// `2g + 1` or `2g + 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperellipticCurve {
    field: FieldSpec,
    f: Poly,
    genus: usize,
}

impl HyperellipticCurve {
    pub fn new(field: &FieldSpec, f: Poly) -> Result<Self> {
        let p = field.characteristic();
        if p == 2 {
            return Err(Error::InvalidCurve("y^2 = f(x) needs odd characteristic".into()));
        }
        let deg = f.degree().unwrap_or(0);
        if deg < 3 {
            return Err(Error::InvalidCurve(format!("deg f = {deg} gives genus 0")));
        }
        if (deg as u64).saturating_mul((p - 1) / 2) > MAX_EXPANSION_DEGREE {
            return Err(Error::InvalidCurve(format!(
                "f^((p-1)/2) has degree above {MAX_EXPANSION_DEGREE} for p = {p}"
            )));
        }
        if !f.is_squarefree(field) {
            return Err(Error::InvalidCurve("f is not squarefree".into()));
        }
        Ok(HyperellipticCurve { field: field.clone(), genus: deg.div_ceil(2) - 1, f })
    }

    /// From coefficients lowest degree first.
    pub fn from_coeffs(field: &FieldSpec, coeffs: &[Fq]) -> Result<Self> {
        Self::new(field, Poly::new(coeffs.to_vec()))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The Cartier-Manin matrix `A_{ij} = [x^{ip - j}] f^{(p-1)/2}`, `1 <= i, j <= g`,
    /// as a `1/p`-linear map.
    pub fn cartier_manin(&self) -> SemilinearMap {
        let k = &self.field;
        let p = k.characteristic() as usize;
        let h = self.f.pow((p as u64 - 1) / 2, k);
        let g = self.genus;
        let mut a = Matrix::zeros(g, g);
        for i in 1..=g {
            for j in 1..=g {
                // negative exponents (p < g) contribute nothing
                if let Some(e) = (i * p).checked_sub(j) {
                    a.set(i - 1, j - 1, h.coeff(e));
                }
            }
        }
        SemilinearMap::new(k.clone(), a, -1).expect("square")
    }

    /// `a = g - rank A`, `f` = stable rank of `A` after `2g` compositions.
    pub fn invariants(&self) -> CurveInvariants {
        CurveInvariants::from_cartier(self.cartier_manin(), 2 * self.genus)
    }
}
