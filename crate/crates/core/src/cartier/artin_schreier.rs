use std::fmt;

use crate::algebra::{FieldSpec, Fq, LaurentPoly, Matrix, Poly, SemilinearMap};
use crate::cartier::CurveInvariants;
use crate::error::{Error, Result};

/// The supported families of `y^2 - y = f(x)` in characteristic 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AsShape {
    /// `f` a polynomial of degree `2g + 1`; differentials `x^b dx`, `0 <= b < g`.
    Poly { g: usize },
    /// `f = x^5 + c1 x^3 + c2 x + c3 / x`; differentials `dx/x, dx, x dx`.
    Gamma1,
    /// `f = x^3 + c1 x + c2 / x + c3 / x^3`; differentials `dx/x^2, dx/x, dx`.
    Gamma2,
}

impl fmt::Display for AsShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsShape::Poly { g } => write!(f, "poly({g})"),
            AsShape::Gamma1 => write!(f, "gamma1"),
            AsShape::Gamma2 => write!(f, "gamma2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierCurve {
    field: FieldSpec,
    shape: AsShape,
    f: LaurentPoly,
    /// Exponents `b` of the basis differentials `x^b dx`.
    basis: Vec<i64>,
}

fn require_char_two(field: &FieldSpec) -> Result<()> {
    if field.characteristic() != 2 {
        return Err(Error::InvalidCurve(format!(
            "Artin-Schreier models here need characteristic 2, got {}",
            field.characteristic()
        )));
    }
    Ok(())
}

impl ArtinSchreierCurve {
    /// `y^2 - y = f(x)` with `f` a polynomial of odd degree `2g + 1 >= 3`.
    pub fn poly(field: &FieldSpec, f: &Poly) -> Result<Self> {
        require_char_two(field)?;
        let deg = f.degree().unwrap_or(0);
        if deg < 3 || deg.is_multiple_of(2) {
            return Err(Error::InvalidCurve(format!("deg f = {deg} is not of the form 2g + 1 >= 3")));
        }
        let g = (deg - 1) / 2;
        let terms: Vec<(i64, Fq)> = f.coeffs().iter().enumerate().map(|(i, &c)| (i as i64, c)).collect();
        Ok(ArtinSchreierCurve {
            field: field.clone(),
            shape: AsShape::Poly { g },
            f: LaurentPoly::from_terms(&terms, field),
            basis: (0..g as i64).collect(),
        })
    }

    pub fn gamma1(field: &FieldSpec, c1: Fq, c2: Fq, c3: Fq) -> Result<Self> {
        Self::gamma(field, AsShape::Gamma1, &[(5, Fq::ONE), (3, c1), (1, c2), (-1, c3)], c3, vec![-1, 0, 1])
    }

    pub fn gamma2(field: &FieldSpec, c1: Fq, c2: Fq, c3: Fq) -> Result<Self> {
        Self::gamma(field, AsShape::Gamma2, &[(3, Fq::ONE), (1, c1), (-1, c2), (-3, c3)], c3, vec![-2, -1, 0])
    }

    fn gamma(field: &FieldSpec, shape: AsShape, terms: &[(i64, Fq)], c3: Fq, basis: Vec<i64>) -> Result<Self> {
        require_char_two(field)?;
        if c3.is_zero() {
            return Err(Error::InvalidCurve(format!("{shape} needs c3 != 0")));
        }
        Ok(ArtinSchreierCurve { field: field.clone(), shape, f: LaurentPoly::from_terms(terms, field), basis })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn shape(&self) -> AsShape {
        self.shape
    }

    pub fn f(&self) -> &LaurentPoly {
        &self.f
    }

    pub fn basis(&self) -> &[i64] {
        &self.basis
    }

    pub fn genus(&self) -> usize {
        self.basis.len()
    }

    /// Matrix of the Cartier operator on the monomial basis (column `j` is the
    /// image of the `j`-th differential), as a `1/2`-linear map.
    pub fn cartier_matrix(&self) -> Result<SemilinearMap> {
        let n = self.basis.len();
        let mut a = Matrix::zeros(n, n);
        for (j, &b) in self.basis.iter().enumerate() {
            let image = cartier_char2(&LaurentPoly::monomial(Fq::ONE, b), &self.field);
            for (e, c) in image.terms() {
                let i = self.basis.iter().position(|&x| x == e).ok_or(Error::CartierClosure { exponent: b })?;
                a.set(i, j, c);
            }
        }
        SemilinearMap::new(self.field.clone(), a, -1)
    }

    pub fn invariants(&self) -> Result<CurveInvariants> {
        Ok(CurveInvariants::from_cartier(self.cartier_matrix()?, 2 * self.genus()))
    }
}

/// Cartier operator on `h(x) dx` in characteristic 2:
/// `C(sum a_i x^i dx) = sum sqrt(a_{2i+1}) x^i dx`.
pub fn cartier_char2(h: &LaurentPoly, k: &FieldSpec) -> LaurentPoly {
    let terms: Vec<(i64, Fq)> = h
        .terms()
        .filter(|(e, _)| e.rem_euclid(2) == 1)
        .map(|(e, c)| ((e - 1).div_euclid(2), k.frobenius(c, -1)))
        .collect();
    LaurentPoly::from_terms(&terms, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn columns(m: &SemilinearMap) -> Vec<Vec<u64>> {
        m.matrix().transpose().to_rows().into_iter().map(|r| r.into_iter().map(Fq::index).collect()).collect()
    }

    #[test]
    fn laurent_rule() {
        let k = FieldSpec::new(2, 2).unwrap();
        let w = k.element(2).unwrap();
        let h = LaurentPoly::from_terms(&[(-3, w), (-1, Fq::ONE), (2, Fq::ONE), (5, w)], &k);
        let c = cartier_char2(&h, &k);
        let sqrt_w = k.frobenius(w, -1);
        assert_eq!(k.mul(sqrt_w, sqrt_w), w);
        assert_eq!(c, LaurentPoly::from_terms(&[(-2, sqrt_w), (-1, Fq::ONE), (2, sqrt_w)], &k));
    }

    #[test]
    fn gamma1_action() {
        let k = FieldSpec::new(2, 1).unwrap();
        let c = ArtinSchreierCurve::gamma1(&k, Fq::ZERO, Fq::ZERO, Fq::ONE).unwrap();
        // C(dx/x) = dx/x, C(dx) = 0, C(x dx) = dx
        assert_eq!(columns(&c.cartier_matrix().unwrap()), vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 1, 0]]);
        let inv = c.invariants().unwrap();
        assert_eq!((inv.p_rank, inv.a_number), (1, 1));
    }

    #[test]
    fn gamma2_action() {
        let k = FieldSpec::new(2, 1).unwrap();
        let c = ArtinSchreierCurve::gamma2(&k, Fq::ZERO, Fq::ZERO, Fq::ONE).unwrap();
        // C(dx/x^2) = 0, C(dx/x) = dx/x, C(dx) = 0
        assert_eq!(columns(&c.cartier_matrix().unwrap()), vec![vec![0, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]);
        assert_eq!(c.invariants().unwrap().a_number, 2);
        assert_eq!(c.invariants().unwrap().p_rank, 1);
    }

    #[test]
    fn poly_shape_x7() {
        let k = FieldSpec::new(2, 1).unwrap();
        let c = ArtinSchreierCurve::poly(&k, &Poly::monomial(Fq::ONE, 7)).unwrap();
        assert_eq!(c.genus(), 3);
        // C(dx) = 0, C(x dx) = dx, C(x^2 dx) = 0
        assert_eq!(columns(&c.cartier_matrix().unwrap()), vec![vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]);
        assert_eq!(c.invariants().unwrap().a_number, 2);
    }

    #[test]
    fn rejections() {
        let k = FieldSpec::new(2, 1).unwrap();
        assert!(ArtinSchreierCurve::gamma1(&k, Fq::ONE, Fq::ONE, Fq::ZERO).is_err());
        assert!(ArtinSchreierCurve::poly(&k, &Poly::monomial(Fq::ONE, 6)).is_err());
        assert!(ArtinSchreierCurve::poly(&k, &Poly::monomial(Fq::ONE, 1)).is_err());
        let k3 = FieldSpec::new(3, 1).unwrap();
        assert!(ArtinSchreierCurve::gamma2(&k3, Fq::ONE, Fq::ONE, Fq::ONE).is_err());
    }
}
