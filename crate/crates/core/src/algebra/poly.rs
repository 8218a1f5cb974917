//! Dense univariate polynomials over a [`FieldSpec`].

use crate::algebra::field::{FieldSpec, Fq};

/// A polynomial with coefficients lowest degree first. Trailing zeros are
/// never stored, so the zero polynomial has an empty coefficient vector and
/// degree `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Fq>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Fq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Fq::ONE] }
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![Fq::ZERO, Fq::ONE] }
    }

    /// `c x^e`.
    pub fn monomial(c: Fq, e: usize) -> Self {
        let mut coeffs = vec![Fq::ZERO; e + 1];
        coeffs[e] = c;
        Poly::new(coeffs)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<Fq> {
        self.coeffs.last().copied()
    }

    pub fn add(&self, other: &Poly, k: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| k.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &Poly, k: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| k.sub(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn scale(&self, c: Fq, k: &FieldSpec) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| k.mul(a, c)).collect())
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Poly, k: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.add(out[i + j], k.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// `self^e` by square-and-multiply; `self^0 = 1`.
    pub fn pow(&self, mut e: u64, k: &FieldSpec) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, k);
            }
        }
        acc
    }

    /// Quotient and remainder. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Poly, k: &FieldSpec) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = k.inv(divisor.coeffs[dd]).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Fq::ZERO; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i];
            if c.is_zero() {
                continue;
            }
            let factor = k.mul(c, lead_inv);
            quot[i - dd] = factor;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = k.sub(rem[i - dd + j], k.mul(factor, d));
            }
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, k: &FieldSpec) -> Poly {
        self.div_rem(divisor, k).1
    }

    /// Scale to leading coefficient one; zero stays zero.
    pub fn monic(&self, k: &FieldSpec) -> Poly {
        match self.leading() {
            Some(c) => self.scale(k.inv(c).expect("nonzero leading coefficient"), k),
            None => Poly::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly, k: &FieldSpec) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, k);
            a = b;
            b = r;
        }
        a.monic(k)
    }

    pub fn derivative(&self, k: &FieldSpec) -> Poly {
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, &c)| k.mul(k.from_int(i as i64), c)).collect())
    }

    /// True when `gcd(f, f') = 1`. Constants count as squarefree; zero does not.
    pub fn is_squarefree(&self, k: &FieldSpec) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative(k), k).degree() == Some(0)
    }

    pub fn eval(&self, x: Fq, k: &FieldSpec) -> Fq {
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| k.add(k.mul(acc, x), c))
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u128, modulus: &Poly, k: &FieldSpec) -> Poly {
        let mut acc = Poly::one().rem(modulus, k);
        let mut base = self.rem(modulus, k);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k).rem(modulus, k);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, k).rem(modulus, k);
            }
        }
        acc
    }

    /// Irreducibility over `k` (Ben-Or): no factor of degree `i <= deg/2`,
    /// i.e. `gcd(f, x^(q^i) - x) = 1` for each such `i`.
    pub fn is_irreducible(&self, k: &FieldSpec) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let x = Poly::x();
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = h.pow_mod(k.order(), self, k);
            if h.sub(&x, k).gcd(self, k).degree() != Some(0) {
                return false;
            }
        }
        true
    }
}
