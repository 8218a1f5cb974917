//! Finite fields `F_{p^m}` with elements stored as packed base-`p` integers.
//!
//! An element `c_0 + c_1 t + ... + c_{m-1} t^{m-1}` of `F_p[t]/(modulus)` is
//! encoded as the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. The encoding
//! doubles as the canonical total order on elements used by enumerations.

use std::fmt;
use std::sync::Arc;

use crate::algebra::poly::Poly;
use crate::error::{Error, Result};

/// A field element, encoded as a packed base-`p` integer. Only meaningful
/// together with the [`FieldSpec`] it was produced by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fq(pub(crate) u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// The packed integer encoding of this element.
    pub fn index(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Largest field order that gets log/antilog tables.
const TABLE_LIMIT: u128 = 1 << 16;

struct Tables {
    log: Vec<u32>,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`, so sums of logs need no reduction.
    exp: Vec<u64>,
}

struct Inner {
    p: u64,
    m: u32,
    /// Monic modulus, lowest degree first, length `m + 1`.
    modulus: Vec<u64>,
    order: u128,
    tables: Option<Tables>,
}

/// The finite field `F_{p^m}`, presented as `F_p[t]/(modulus)`.
///
/// Cheap to clone; all state is shared and immutable.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.inner.p)
            .field("m", &self.inner.m)
            .field("modulus", &self.inner.modulus)
            .finish()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}", self.inner.p, self.inner.m)
        }
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &q in &SMALL {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self::from_parts(p, 1, vec![0, 1]))
    }

    /// `F_{p^m}` with the lexicographically smallest monic irreducible modulus
    /// of degree `m`, comparing coefficient sequences from the constant term up.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::FieldTooLarge { p, m });
        }
        let mut order: u128 = 1;
        for _ in 0..m {
            order = order.checked_mul(p as u128).filter(|&q| q <= 1u128 << 64).ok_or(Error::FieldTooLarge { p, m })?;
        }
        if m == 1 {
            return Self::prime(p);
        }
        let base = Self::prime(p)?;
        // Tuples (c_0, ..., c_{m-1}) in lexicographic order, c_0 most significant.
        // c_0 = 0 is skipped since then t divides the candidate.
        let mut tail = vec![0u64; m as usize];
        tail[0] = 1;
        loop {
            let mut coeffs: Vec<Fq> = tail.iter().map(|&c| Fq(c)).collect();
            coeffs.push(Fq::ONE);
            let candidate = Poly::new(coeffs);
            if candidate.is_irreducible(&base) {
                let mut modulus = tail.clone();
                modulus.push(1);
                return Ok(Self::from_parts(p, m, modulus));
            }
            // Increment with the last coordinate least significant.
            let mut i = m as usize - 1;
            loop {
                tail[i] += 1;
                if tail[i] < p {
                    break;
                }
                tail[i] = 0;
                if i == 0 {
                    return Err(Error::Invariant(format!("no irreducible polynomial of degree {m} over F_{p}")));
                }
                i -= 1;
            }
        }
    }

    /// `F_{p^m}` with a caller-chosen modulus (monic, lowest degree first).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        let base = Self::prime(p)?;
        let m = modulus.len().saturating_sub(1) as u32;
        if m == 0 || modulus[m as usize] != 1 || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidSpec(format!("modulus {modulus:?} is not a monic polynomial over F_{p}")));
        }
        Self::new(p, m)?; // size check
        let poly = Poly::new(modulus.iter().map(|&c| Fq(c)).collect());
        if !poly.is_irreducible(&base) {
            return Err(Error::InvalidSpec(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        Ok(Self::from_parts(p, m, modulus.to_vec()))
    }

    fn from_parts(p: u64, m: u32, modulus: Vec<u64>) -> Self {
        let order = (p as u128).pow(m);
        let mut inner = Inner { p, m, modulus, order, tables: None };
        if m > 1 && order <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        FieldSpec { inner: Arc::new(inner) }
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    /// Number of elements `p^m`.
    pub fn order(&self) -> u128 {
        self.inner.order
    }

    /// The modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// The image of an integer under `Z -> F_p -> F_{p^m}`.
    pub fn from_int(&self, n: i64) -> Fq {
        Fq((n as i128).rem_euclid(self.inner.p as i128) as u64)
    }

    /// The element with packed encoding `index`.
    pub fn element(&self, index: u128) -> Result<Fq> {
        if index >= self.inner.order {
            return Err(Error::ElementOutOfRange { index, order: self.inner.order });
        }
        Ok(Fq(index as u64))
    }

    /// The element `c_0 + c_1 t + ...`; missing high coordinates are zero.
    pub fn from_coords(&self, coords: &[u64]) -> Result<Fq> {
        let p = self.inner.p;
        if coords.len() > self.inner.m as usize || coords.iter().any(|&c| c >= p) {
            return Err(Error::Parse(format!("bad coordinates {coords:?} for {self}")));
        }
        Ok(Fq(coords.iter().rev().fold(0u64, |acc, &c| acc.wrapping_mul(p).wrapping_add(c))))
    }

    /// Coordinates of `a` over `F_p`, length `m`.
    pub fn coords(&self, a: Fq) -> Vec<u64> {
        let p = self.inner.p;
        let m = self.inner.m as usize;
        if m == 1 {
            return vec![a.0];
        }
        let mut out = Vec::with_capacity(m);
        let mut x = a.0;
        for _ in 0..m {
            out.push(x % p);
            x /= p;
        }
        out
    }

    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return Fq(((a.0 as u128 + b.0 as u128) % p as u128) as u64);
        }
        if p == 2 {
            return Fq(a.0 ^ b.0);
        }
        self.digitwise(a, b, |x, y| {
            let s = x + y;
            if s >= p {
                s - p
            } else {
                s
            }
        })
    }

    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.inner.p;
        if a.0 == 0 || p == 2 {
            return a;
        }
        if self.inner.m == 1 {
            return Fq(p - a.0);
        }
        self.digitwise(a, Fq::ZERO, |x, _| if x == 0 { 0 } else { p - x })
    }

    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }

    fn digitwise(&self, a: Fq, b: Fq, op: impl Fn(u64, u64) -> u64) -> Fq {
        let p = self.inner.p;
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for i in 0..self.inner.m {
            out += op(x % p, y % p) * place;
            x /= p;
            y /= p;
            if i + 1 < self.inner.m {
                place *= p;
            }
        }
        Fq(out)
    }

    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if a.0 == 0 || b.0 == 0 {
            return Fq::ZERO;
        }
        if self.inner.m == 1 {
            return Fq(mul_mod(a.0, b.0, self.inner.p));
        }
        if let Some(t) = &self.inner.tables {
            return Fq(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]);
        }
        mul_generic(&self.inner, a, b)
    }

    /// `a^e` by square-and-multiply.
    pub fn pow(&self, a: Fq, mut e: u128) -> Fq {
        if let Some(t) = &self.inner.tables {
            if a.0 == 0 {
                return if e == 0 { Fq::ONE } else { Fq::ZERO };
            }
            let l = (t.log[a.0 as usize] as u128 * (e % (self.inner.order - 1))) % (self.inner.order - 1);
            return Fq(t.exp[l as usize]);
        }
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.inner.tables {
            let q1 = (self.inner.order - 1) as usize;
            return Some(Fq(t.exp[q1 - t.log[a.0 as usize] as usize]));
        }
        Some(self.pow(a, self.inner.order - 2))
    }

    /// `sigma^t(a) = a^(p^t)`; `t` may be negative and is taken mod `m`.
    pub fn frobenius(&self, a: Fq, t: i64) -> Fq {
        let m = self.inner.m as i64;
        let k = t.rem_euclid(m) as u32;
        if k == 0 || a.0 <= 1 {
            return a;
        }
        self.pow(a, (self.inner.p as u128).pow(k))
    }

    /// All elements in encoding order. Only for fields with fewer than 2^64 elements.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        let q = u64::try_from(self.inner.order).unwrap_or(u64::MAX);
        (0..q).map(Fq)
    }

    /// Parse either a packed integer (`"7"`) or `F_p` coordinates joined by
    /// `:` lowest first (`"1:2"` is `1 + 2t`).
    pub fn parse_element(&self, text: &str) -> Result<Fq> {
        let text = text.trim();
        if text.contains(':') {
            let coords = text
                .split(':')
                .map(|c| c.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{c:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            return self.from_coords(&coords);
        }
        let n: u128 = text.parse().map_err(|e| Error::Parse(format!("{text:?}: {e}")))?;
        self.element(n).map_err(|_| Error::Parse(format!("{text:?} is not an element of {self}")))
    }

    /// Inverse of [`FieldSpec::parse_element`]: plain residue for prime
    /// fields, `:`-joined coordinates otherwise.
    pub fn format_element(&self, a: Fq) -> String {
        if self.inner.m == 1 {
            return a.0.to_string();
        }
        self.coords(a).iter().map(u64::to_string).collect::<Vec<_>>().join(":")
    }
}

fn mul_generic(inner: &Inner, a: Fq, b: Fq) -> Fq {
    let p = inner.p as u128;
    let m = inner.m as usize;
    let digits = |mut x: u64| {
        let mut d = vec![0u128; m];
        for slot in d.iter_mut() {
            *slot = (x % inner.p) as u128;
            x /= inner.p;
        }
        d
    };
    let (da, db) = (digits(a.0), digits(b.0));
    let mut prod = vec![0u128; 2 * m - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y % p) % p;
        }
    }
    for k in (m..2 * m - 1).rev() {
        let c = prod[k];
        if c == 0 {
            continue;
        }
        prod[k] = 0;
        for i in 0..m {
            let sub = c * inner.modulus[i] as u128 % p;
            prod[k - m + i] = (prod[k - m + i] + p - sub) % p;
        }
    }
    let mut out = 0u64;
    for &c in prod[..m].iter().rev() {
        out = out * inner.p + c as u64;
    }
    Fq(out)
}

fn build_tables(inner: &Inner) -> Tables {
    let q = inner.order as u64;
    let q1 = q - 1;
    let factors = prime_factors(q1 as u128);
    let pow = |a: Fq, mut e: u64| {
        let mut base = a;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_generic(inner, acc, base);
            }
            base = mul_generic(inner, base, base);
            e >>= 1;
        }
        acc
    };
    let generator = (2..q)
        .map(Fq)
        .find(|&g| factors.iter().all(|&l| pow(g, q1 / l as u64) != Fq::ONE))
        .expect("the multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u64; 2 * q1 as usize];
    let mut log = vec![0u32; q as usize];
    let mut x = Fq::ONE;
    for i in 0..q1 as usize {
        exp[i] = x.0;
        exp[i + q1 as usize] = x.0;
        log[x.0 as usize] = i as u32;
        x = mul_generic(inner, x, generator);
    }
    Tables { log, exp }
}
