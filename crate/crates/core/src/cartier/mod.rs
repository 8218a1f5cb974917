//! p-rank and a-number of explicit curves from the matrix of the Cartier operator
//! on regular differentials.

mod artin_schreier;
mod hyperelliptic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use artin_schreier::{cartier_char2, ArtinSchreierCurve, AsShape};
pub use hyperelliptic::HyperellipticCurve;

use crate::algebra::{FieldSpec, Fq, Poly, SemilinearMap};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveInvariants {
    pub p_rank: usize,
    pub a_number: usize,
    /// The Cartier operator on regular differentials (twist -1).
    pub cartier_matrix: SemilinearMap,
}

impl CurveInvariants {
    /// `a = g - rank C` and `f` = rank of `C^iterations`.
    pub fn from_cartier(cartier_matrix: SemilinearMap, iterations: usize) -> Self {
        let g = cartier_matrix.dim();
        CurveInvariants {
            a_number: g - cartier_matrix.rank(),
            p_rank: cartier_matrix.stable_rank(iterations),
            cartier_matrix,
        }
    }

    pub fn genus(&self) -> usize {
        self.cartier_matrix.dim()
    }
}

/// Curve families, named as in the census files.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Model {
    /// `y^2 = f(x)`, `p` odd; coefficients are those of `f`, lowest first.
    OddPPoly,
    /// `y^2 - y = f(x)`, `p = 2`, `f` a polynomial of degree `2g + 1`.
    As2Poly,
    /// `y^2 - y = x^5 + c1 x^3 + c2 x + c3/x`; coefficients `c1, c2, c3`.
    As2Gamma1,
    /// `y^2 - y = x^3 + c1 x + c2/x + c3/x^3`; coefficients `c1, c2, c3`.
    As2Gamma2,
}

impl Model {
    pub const ALL: [Model; 4] = [Model::OddPPoly, Model::As2Poly, Model::As2Gamma1, Model::As2Gamma2];

    pub fn name(self) -> &'static str {
        match self {
            Model::OddPPoly => "ODD_P_POLY",
            Model::As2Poly => "AS2_POLY",
            Model::As2Gamma1 => "AS2_GAMMA1",
            Model::As2Gamma2 => "AS2_GAMMA2",
        }
    }

    pub fn supports_characteristic(self, p: u64) -> bool {
        match self {
            Model::OddPPoly => p != 2,
            _ => p == 2,
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = Error;

    /// Accepts `ODD_P_POLY` as well as `odd-p-poly`.
    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_uppercase().replace('-', "_");
        Model::ALL.into_iter().find(|m| m.name() == norm).ok_or_else(|| Error::Parse(format!("unknown model {s:?}")))
    }
}

/// Any curve the crate can classify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Curve {
    Hyperelliptic(HyperellipticCurve),
    ArtinSchreier(ArtinSchreierCurve),
}

impl Curve {
    pub fn from_model(field: &FieldSpec, model: Model, coeffs: &[Fq]) -> Result<Self> {
        let gamma_params = || -> Result<(Fq, Fq, Fq)> {
            match coeffs {
                &[c1, c2, c3] => Ok((c1, c2, c3)),
                _ => Err(Error::InvalidCurve(format!("{model} takes 3 parameters, got {}", coeffs.len()))),
            }
        };
        match model {
            Model::OddPPoly => Ok(Curve::Hyperelliptic(HyperellipticCurve::from_coeffs(field, coeffs)?)),
            Model::As2Poly => Ok(Curve::ArtinSchreier(ArtinSchreierCurve::poly(field, &Poly::new(coeffs.to_vec()))?)),
            Model::As2Gamma1 => {
                let (a, b, c) = gamma_params()?;
                Ok(Curve::ArtinSchreier(ArtinSchreierCurve::gamma1(field, a, b, c)?))
            }
            Model::As2Gamma2 => {
                let (a, b, c) = gamma_params()?;
                Ok(Curve::ArtinSchreier(ArtinSchreierCurve::gamma2(field, a, b, c)?))
            }
        }
    }

    pub fn genus(&self) -> usize {
        match self {
            Curve::Hyperelliptic(c) => c.genus(),
            Curve::ArtinSchreier(c) => c.genus(),
        }
    }

    pub fn invariants(&self) -> Result<CurveInvariants> {
        match self {
            Curve::Hyperelliptic(c) => Ok(c.invariants()),
            Curve::ArtinSchreier(c) => c.invariants(),
        }
    }
}

/// Serialized curve: `{p, m, g, model, coefficients}` with packed element encodings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDescription {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub model: Model,
    pub coefficients: Vec<u64>,
}

impl CurveDescription {
    pub fn new(field: &FieldSpec, model: Model, coeffs: &[Fq]) -> Result<Self> {
        let curve = Curve::from_model(field, model, coeffs)?;
        Ok(CurveDescription {
            p: field.characteristic(),
            m: field.degree(),
            g: curve.genus(),
            model,
            coefficients: coeffs.iter().map(|c| c.index()).collect(),
        })
    }

    /// Rebuild the curve, checking the recorded genus.
    pub fn to_curve(&self) -> Result<(FieldSpec, Curve)> {
        let field = FieldSpec::new(self.p, self.m)?;
        let coeffs = self.coefficients.iter().map(|&c| field.element(c as u128)).collect::<Result<Vec<_>>>()?;
        let curve = Curve::from_model(&field, self.model, &coeffs)?;
        if curve.genus() != self.g {
            return Err(Error::InvalidCurve(format!(
                "recorded genus {} but curve has genus {}",
                self.g,
                curve.genus()
            )));
        }
        Ok((field, curve))
    }
}
