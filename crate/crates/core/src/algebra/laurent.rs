//! Laurent polynomials: finitely many terms with integer (possibly negative) exponents.

use crate::algebra::field::{FieldSpec, Fq};

/// `sum_{i=lo}^{hi} c_i x^i`, stored as `lo` plus a dense window.
/// Both ends of the window carry nonzero coefficients; zero is the empty window.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<Fq>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    /// `c x^e`.
    pub fn monomial(c: Fq, e: i64) -> Self {
        LaurentPoly::from_window(e, vec![c])
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms(terms: &[(i64, Fq)], k: &FieldSpec) -> Self {
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return LaurentPoly::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap_or(lo);
        let mut coeffs = vec![Fq::ZERO; (hi - lo + 1) as usize];
        for &(e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = k.add(*slot, c);
        }
        LaurentPoly::from_window(lo, coeffs)
    }

    fn from_window(mut lo: i64, mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        lo += lead as i64;
        if coeffs.is_empty() {
            lo = 0;
        }
        LaurentPoly { lo, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn lo(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn hi(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Fq {
        if e < self.lo {
            return Fq::ZERO;
        }
        self.coeffs.get((e - self.lo) as usize).copied().unwrap_or(Fq::ZERO)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Fq)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, &c)| (self.lo + i as i64, c))
    }

    pub fn add(&self, other: &LaurentPoly, k: &FieldSpec) -> LaurentPoly {
        let terms: Vec<(i64, Fq)> = self.terms().chain(other.terms()).collect();
        LaurentPoly::from_terms(&terms, k)
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms().count()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }
}
