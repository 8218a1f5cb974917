//! Mod-p Dieudonne modules of BT_1 group schemes: a finite-dimensional space
//! with a Frobenius `F` (twist +1) and a Verschiebung `V` (twist -1).
//!
//! Conventions are covariant: the etale line has `F` invertible and the
//! multiplicative line has `V` invertible, so the p-rank is the stable rank of `V`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{FieldSpec, Fq, Matrix, SemilinearMap, Subspace};
use crate::eo::EoType;
use crate::error::{Error, Result};

/// Selects one of the two structure operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operator {
    F,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DieudonneModule {
    field: FieldSpec,
    frobenius: SemilinearMap,
    verschiebung: SemilinearMap,
}

/// One step of the canonical filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiltrationStep {
    pub subspace: Subspace,
    pub dim: usize,
    pub image_dim_under_v: usize,
}

/// The named building blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    /// `Z/p`: one line, `F = 1`, `V = 0`.
    Etale,
    /// `mu_p`: one line, `F = 0`, `V = 1`.
    Multiplicative,
    /// `Z/p + mu_p`, the ordinary block of genus 1.
    Ordinary,
    /// `I_r = E/E(F^r - V^r)`.
    Ir(usize),
    /// `I_{3,2} = E/E(F - V^2) + E/E(V - F^2)`.
    I32,
}

impl Block {
    pub fn build(self, field: &FieldSpec) -> Result<DieudonneModule> {
        match self {
            Block::Etale => Ok(DieudonneModule::etale(field)),
            Block::Multiplicative => Ok(DieudonneModule::multiplicative(field)),
            Block::Ordinary => Ok(DieudonneModule::ordinary(field, 1)),
            Block::Ir(r) => DieudonneModule::ir(field, r),
            Block::I32 => Ok(DieudonneModule::i32(field)),
        }
    }

    /// Half the dimension (etale and multiplicative lines count as 0).
    pub fn genus(self) -> usize {
        match self {
            Block::Etale | Block::Multiplicative => 0,
            Block::Ordinary => 1,
            Block::Ir(r) => r,
            Block::I32 => 3,
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Etale => write!(f, "etale"),
            Block::Multiplicative => write!(f, "mult"),
            Block::Ordinary => write!(f, "ord"),
            Block::Ir(r) => write!(f, "ir:{r}"),
            Block::I32 => write!(f, "i32"),
        }
    }
}

impl FromStr for Block {
    type Err = Error;

    /// `etale`, `mult`, `ord`, `i32`, or `ir:R`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "etale" => Ok(Block::Etale),
            "mult" => Ok(Block::Multiplicative),
            "ord" | "ordinary" => Ok(Block::Ordinary),
            "i32" => Ok(Block::I32),
            other => {
                let r = other
                    .strip_prefix("ir:")
                    .and_then(|r| r.parse::<usize>().ok())
                    .filter(|&r| r >= 1)
                    .ok_or_else(|| Error::Parse(format!("unknown block {other:?}")))?;
                Ok(Block::Ir(r))
            }
        }
    }
}

/// Serialized form: entries use the packed element encoding, rows top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleDescription {
    pub p: u64,
    pub m: u32,
    pub dim: usize,
    #[serde(rename = "F")]
    pub f: Vec<Vec<u64>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<u64>>,
}

/// Square 0/1 matrix sending basis vector `from` to basis vector `to` for each pair.
fn shift_matrix(n: usize, moves: &[(usize, usize)]) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for &(from, to) in moves {
        m.set(to, from, Fq::ONE);
    }
    m
}

impl DieudonneModule {
    /// Wrap a pair of matrices as `F` (twist +1) and `V` (twist -1).
    pub fn from_matrices(field: &FieldSpec, f: Matrix, v: Matrix) -> Result<Self> {
        if f.rows() != v.rows() || !f.is_square() || !v.is_square() || f.rows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "F is {}x{}, V is {}x{}",
                f.rows(),
                f.cols(),
                v.rows(),
                v.cols()
            )));
        }
        Ok(DieudonneModule {
            field: field.clone(),
            frobenius: SemilinearMap::new(field.clone(), f, 1)?,
            verschiebung: SemilinearMap::new(field.clone(), v, -1)?,
        })
    }

    pub fn etale(field: &FieldSpec) -> Self {
        Self::from_matrices(field, Matrix::identity(1), Matrix::zeros(1, 1)).expect("1x1")
    }

    pub fn multiplicative(field: &FieldSpec) -> Self {
        Self::from_matrices(field, Matrix::zeros(1, 1), Matrix::identity(1)).expect("1x1")
    }

    /// `(Z/p + mu_p)^g`.
    pub fn ordinary(field: &FieldSpec, g: usize) -> Self {
        let block = Self::etale(field).direct_sum(&Self::multiplicative(field)).expect("same field");
        (1..g).fold(block.clone(), |acc, _| acc.direct_sum(&block).expect("same field"))
    }

    /// `I_r = E/E(F^r - V^r)` on the basis `1, F, ..., F^{r-1}, V, ..., V^{r-1}, F^r`.
    pub fn ir(field: &FieldSpec, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidModule("I_r needs r >= 1".into()));
        }
        let n = 2 * r;
        let top = n - 1; // F^r = V^r
        let f_idx = |i: usize| if i == r { top } else { i };
        let v_idx = |j: usize| match j {
            0 => 0,
            j if j == r => top,
            j => r - 1 + j,
        };
        let f_moves: Vec<_> = (0..r).map(|i| (f_idx(i), f_idx(i + 1))).collect();
        let v_moves: Vec<_> = (0..r).map(|j| (v_idx(j), v_idx(j + 1))).collect();
        Self::from_matrices(field, shift_matrix(n, &f_moves), shift_matrix(n, &v_moves))
    }

    /// `I_{3,2}`: basis `1, V, V^2` of `E/E(F - V^2)` then `1, F, F^2` of `E/E(V - F^2)`.
    pub fn i32(field: &FieldSpec) -> Self {
        let f = shift_matrix(6, &[(0, 2), (3, 4), (4, 5)]);
        let v = shift_matrix(6, &[(0, 1), (1, 2), (3, 5)]);
        Self::from_matrices(field, f, v).expect("6x6")
    }

    /// The two summands of [`DieudonneModule::i32`].
    pub fn i32_summands(field: &FieldSpec) -> (Self, Self) {
        let a = Self::from_matrices(field, shift_matrix(3, &[(0, 2)]), shift_matrix(3, &[(0, 1), (1, 2)]));
        let b = Self::from_matrices(field, shift_matrix(3, &[(0, 1), (1, 2)]), shift_matrix(3, &[(0, 2)]));
        (a.expect("3x3"), b.expect("3x3"))
    }

    /// Direct sum of a sequence of blocks (at least one).
    pub fn from_blocks(field: &FieldSpec, blocks: &[Block]) -> Result<Self> {
        let (first, rest) = blocks.split_first().ok_or_else(|| Error::InvalidModule("empty block list".into()))?;
        rest.iter().try_fold(first.build(field)?, |acc, b| acc.direct_sum(&b.build(field)?))
    }

    pub fn direct_sum(&self, other: &DieudonneModule) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Self::from_matrices(
            &self.field,
            self.frobenius.matrix().block_diag(other.frobenius.matrix()),
            self.verschiebung.matrix().block_diag(other.verschiebung.matrix()),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.frobenius.dim()
    }

    pub fn genus(&self) -> usize {
        self.dim() / 2
    }

    pub fn frobenius(&self) -> &SemilinearMap {
        &self.frobenius
    }

    pub fn verschiebung(&self) -> &SemilinearMap {
        &self.verschiebung
    }

    pub fn operator(&self, which: Operator) -> &SemilinearMap {
        match which {
            Operator::F => &self.frobenius,
            Operator::V => &self.verschiebung,
        }
    }

    /// `FV = VF = 0`, `im F = ker V` and `im V = ker F`.
    pub fn is_bt1(&self) -> bool {
        let (f, v) = (&self.frobenius, &self.verschiebung);
        let fv_zero = f.compose(v).is_ok_and(|c| c.is_zero());
        let vf_zero = v.compose(f).is_ok_and(|c| c.is_zero());
        fv_zero && vf_zero && f.image_space() == v.kernel() && v.image_space() == f.kernel()
    }

    fn require_bt1(&self) -> Result<()> {
        if !self.is_bt1() {
            return Err(Error::InvalidModule("BT_1 axioms fail".into()));
        }
        Ok(())
    }

    /// Stable rank of `V`, computed with `2 * dim` compositions.
    pub fn p_rank(&self) -> Result<usize> {
        self.require_bt1()?;
        Ok(self.verschiebung.stable_rank(2 * self.dim()))
    }

    /// `dim(ker F ∩ ker V)`.
    pub fn a_number(&self) -> Result<usize> {
        self.require_bt1()?;
        Ok(self.superspecial_part()?.dim())
    }

    /// `ker F ∩ ker V`.
    pub fn superspecial_part(&self) -> Result<Subspace> {
        self.frobenius.kernel().intersect(&self.verschiebung.kernel(), &self.field)
    }

    /// `dim ker(op^n)`.
    pub fn kernel_power(&self, which: Operator, n: usize) -> usize {
        self.operator(which).kernel_power_dim(n)
    }

    /// The coarsest filtration stable under `V` and `F^{-1}`, starting from
    /// `{0, D}`, sorted by dimension.
    pub fn canonical_filtration(&self) -> Result<Vec<FiltrationStep>> {
        self.require_bt1()?;
        let n = self.dim();
        let k = &self.field;
        let g = self.genus().max(1);
        let bound = 4 * g * g;
        let mut seen: BTreeSet<Subspace> = [Subspace::zero(n), Subspace::full(n)].into();
        let mut work: Vec<Subspace> = seen.iter().cloned().collect();
        let mut insertions = 0;
        while let Some(w) = work.pop() {
            for next in [self.verschiebung.image(&w)?, self.frobenius.preimage(&w)?] {
                if seen.insert(next.clone()) {
                    insertions += 1;
                    if insertions > bound {
                        return Err(Error::Invariant(format!("canonical filtration exceeded {bound} insertions")));
                    }
                    work.push(next);
                }
            }
        }
        let mut chain: Vec<Subspace> = seen.into_iter().collect();
        chain.sort_by_key(Subspace::dim);
        for pair in chain.windows(2) {
            if pair[0].dim() == pair[1].dim() || !pair[1].contains(&pair[0], k)? {
                return Err(Error::InvalidModule("canonical subspaces do not form a chain".into()));
            }
        }
        chain
            .into_iter()
            .map(|w| {
                let image_dim_under_v = self.verschiebung.image(&w)?.dim();
                Ok(FiltrationStep { dim: w.dim(), image_dim_under_v, subspace: w })
            })
            .collect()
    }

    /// The Ekedahl-Oort type read off the canonical filtration: `psi(d) = dim V(W_d)`
    /// on canonical dimensions, extended across each gap with slope 0 or 1.
    pub fn eo_type(&self) -> Result<EoType> {
        if self.dim() == 0 || !self.dim().is_multiple_of(2) {
            return Err(Error::InvalidModule(format!("odd dimension {}", self.dim())));
        }
        let steps = self.canonical_filtration()?;
        let mut psi = vec![0usize; self.dim() + 1];
        for pair in steps.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            let gap = hi.dim - lo.dim;
            let rise = hi.image_dim_under_v - lo.image_dim_under_v;
            let slope = match rise {
                0 => 0,
                r if r == gap => 1,
                _ => return Err(Error::InvalidModule(format!("V-rank rises by {rise} across a gap of {gap}"))),
            };
            for i in 0..=gap {
                psi[lo.dim + i] = lo.image_dim_under_v + slope * i;
            }
        }
        let g = self.genus();
        let nu = psi[1..=g].iter().map(|&x| x as u32).collect();
        let eo = EoType::new(nu).map_err(|e| Error::InvalidModule(e.to_string()))?;
        if psi[2 * g] != g {
            return Err(Error::InvalidModule(format!("rank V = {} but g = {g}", psi[2 * g])));
        }
        let (f, a) = (self.p_rank()?, self.a_number()?);
        if eo.p_rank() != f || eo.a_number() != a {
            return Err(Error::Invariant(format!(
                "type {eo} gives (f, a) = ({}, {}) but the module has ({f}, {a})",
                eo.p_rank(),
                eo.a_number()
            )));
        }
        Ok(eo)
    }

    /// True when no splitting `D = U + W` into nonzero `F,V`-stable subspaces
    /// exists. Exhaustive over all subspaces, so only for tiny modules.
    pub fn is_indecomposable(&self) -> Result<bool> {
        let stable: Vec<Subspace> = all_subspaces(&self.field, self.dim())?
            .into_iter()
            .filter(|w| w.dim() > 0 && w.dim() < self.dim())
            .filter(|w| self.is_stable(w))
            .collect();
        for (i, u) in stable.iter().enumerate() {
            for w in &stable[i + 1..] {
                if u.dim() + w.dim() == self.dim() && u.sum(w, &self.field)?.dim() == self.dim() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn is_stable(&self, w: &Subspace) -> bool {
        [&self.frobenius, &self.verschiebung]
            .iter()
            .all(|op| op.image(w).and_then(|img| w.contains(&img, &self.field)).unwrap_or(false))
    }

    pub fn to_description(&self) -> ModuleDescription {
        let rows = |m: &Matrix| -> Vec<Vec<u64>> {
            m.to_rows().into_iter().map(|r| r.into_iter().map(Fq::index).collect()).collect()
        };
        ModuleDescription {
            p: self.field.characteristic(),
            m: self.field.degree(),
            dim: self.dim(),
            f: rows(self.frobenius.matrix()),
            v: rows(self.verschiebung.matrix()),
        }
    }

    pub fn from_description(desc: &ModuleDescription) -> Result<Self> {
        let field = FieldSpec::new(desc.p, desc.m)?;
        let matrix = |rows: &[Vec<u64>]| -> Result<Matrix> {
            if rows.len() != desc.dim {
                return Err(Error::DimensionMismatch(format!("{} rows for dimension {}", rows.len(), desc.dim)));
            }
            let rows = rows
                .iter()
                .map(|r| r.iter().map(|&x| field.element(x as u128)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            Matrix::from_rows(desc.dim, rows)
        };
        Self::from_matrices(&field, matrix(&desc.f)?, matrix(&desc.v)?)
    }
}

/// Every subspace of `k^n`, one per reduced row echelon form.
fn all_subspaces(field: &FieldSpec, n: usize) -> Result<Vec<Subspace>> {
    const LIMIT: u128 = 1 << 20;
    let q = field.order();
    // Total count bounded by q^(n^2/4) times the number of pivot patterns.
    let exponent = (n * n / 4) as u32;
    if q.checked_pow(exponent).is_none_or(|c| c.saturating_mul(1 << n) > LIMIT) {
        return Err(Error::InvalidModule(format!(
            "exhaustive subspace search too large for dimension {n} over {field}"
        )));
    }
    let elements: Vec<Fq> = field.elements().collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let pivots: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
        // free slots: (row, col) with col > pivot(row) and col not a pivot
        let slots: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| (pc + 1..n).filter(|c| !pivots.contains(c)).map(move |c| (r, c)))
            .collect();
        let mut counter = vec![0usize; slots.len()];
        loop {
            let mut m = Matrix::zeros(pivots.len(), n);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(r, pc, Fq::ONE);
            }
            for (&(r, c), &v) in slots.iter().zip(&counter) {
                m.set(r, c, elements[v]);
            }
            out.push(Subspace::span(&m, field));
            let Some(pos) = counter.iter().position(|&v| v + 1 < elements.len()) else {
                break;
            };
            counter[pos] += 1;
            counter[..pos].iter_mut().for_each(|v| *v = 0);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::new(2, 1).unwrap()
    }

    fn eo(nu: &[u32]) -> EoType {
        EoType::new(nu.to_vec()).unwrap()
    }

    #[test]
    fn ordinary_line_pair() {
        let k = f2();
        let d = DieudonneModule::ordinary(&k, 1);
        assert!(d.is_bt1());
        assert_eq!(d.p_rank().unwrap(), 1);
        assert_eq!(d.a_number().unwrap(), 0);
        assert_eq!(d.eo_type().unwrap(), eo(&[1]));
        assert_eq!(DieudonneModule::ordinary(&k, 3).eo_type().unwrap(), eo(&[1, 2, 3]));
    }

    #[test]
    fn ir_examples() {
        let k = FieldSpec::new(3, 1).unwrap();
        let i1 = DieudonneModule::ir(&k, 1).unwrap();
        assert_eq!(i1.dim(), 2);
        assert_eq!(i1.superspecial_part().unwrap().dim(), 1);
        let i2 = DieudonneModule::ir(&k, 2).unwrap();
        assert_eq!(i2.eo_type().unwrap(), eo(&[0, 1]));
        assert_eq!(i2.kernel_power(Operator::V, 2), 3);
        assert_eq!(DieudonneModule::ir(&k, 3).unwrap().eo_type().unwrap(), eo(&[0, 1, 2]));
        for r in 1..=6 {
            let ir = DieudonneModule::ir(&k, r).unwrap();
            assert!(ir.is_bt1());
            assert_eq!(ir.p_rank().unwrap(), 0);
            assert_eq!(ir.a_number().unwrap(), 1);
            assert_eq!(ir.kernel_power(Operator::V, r + 1), 2 * r);
        }
        assert!(DieudonneModule::ir(&k, 0).is_err());
    }

    #[test]
    fn i32_module() {
        let k = f2();
        let d = DieudonneModule::i32(&k);
        assert!(d.is_bt1());
        assert_eq!(d.eo_type().unwrap(), eo(&[0, 1, 1]));
        assert_eq!(d.a_number().unwrap(), 2);
        assert_eq!(d.p_rank().unwrap(), 0);
        let (a, b) = DieudonneModule::i32_summands(&k);
        assert_eq!(a.direct_sum(&b).unwrap(), d);
        assert!(a.is_indecomposable().unwrap());
        assert!(b.is_indecomposable().unwrap());
        assert!(!d.is_indecomposable().unwrap());
    }

    #[test]
    fn direct_sums() {
        let k = f2();
        let i1 = DieudonneModule::ir(&k, 1).unwrap();
        let i2 = DieudonneModule::ir(&k, 2).unwrap();
        let s = i1.direct_sum(&i1).unwrap();
        assert_eq!(s.a_number().unwrap(), 2);
        assert_eq!(s.eo_type().unwrap(), eo(&[0, 0]));
        assert_eq!(s.direct_sum(&i1).unwrap().eo_type().unwrap(), eo(&[0, 0, 0]));
        let t = i2.direct_sum(&i1).unwrap();
        assert_eq!(t.eo_type().unwrap(), eo(&[0, 0, 1]));
        assert_eq!(t.a_number().unwrap(), 2);
        let other = FieldSpec::new(3, 1).unwrap();
        assert!(i1.direct_sum(&DieudonneModule::ir(&other, 1).unwrap()).is_err());
    }

    #[test]
    fn bt1_rejections() {
        let k = f2();
        let zero = DieudonneModule::from_matrices(&k, Matrix::zeros(2, 2), Matrix::zeros(2, 2)).unwrap();
        assert!(!zero.is_bt1());
        let id = DieudonneModule::from_matrices(&k, Matrix::identity(2), Matrix::identity(2)).unwrap();
        assert!(!id.is_bt1());
        assert!(zero.p_rank().is_err());
        assert!(id.eo_type().is_err());
    }

    #[test]
    fn ordinary_kernel_powers() {
        let d = DieudonneModule::ordinary(&f2(), 1);
        for n in 1..5 {
            assert_eq!(d.kernel_power(Operator::V, n), 1);
        }
    }

    #[test]
    fn description_round_trip() {
        let k = FieldSpec::new(5, 1).unwrap();
        let d = DieudonneModule::ir(&k, 2).unwrap().direct_sum(&DieudonneModule::ordinary(&k, 1)).unwrap();
        let json = serde_json::to_string(&d.to_description()).unwrap();
        assert!(json.contains("\"F\""));
        let back: ModuleDescription = serde_json::from_str(&json).unwrap();
        assert_eq!(DieudonneModule::from_description(&back).unwrap(), d);
    }

    #[test]
    fn block_names() {
        for b in [Block::Etale, Block::Multiplicative, Block::Ordinary, Block::Ir(4), Block::I32] {
            assert_eq!(b.to_string().parse::<Block>().unwrap(), b);
        }
        assert!("ir:0".parse::<Block>().is_err());
        assert!("i3".parse::<Block>().is_err());
    }

    #[test]
    fn subspace_enumeration_counts() {
        // Gaussian binomial sums: 5 subspaces of F_2^2, 16 of F_2^3, 6 of F_3^2.
        assert_eq!(all_subspaces(&f2(), 2).unwrap().len(), 5);
        assert_eq!(all_subspaces(&f2(), 3).unwrap().len(), 16);
        assert_eq!(all_subspaces(&FieldSpec::new(3, 1).unwrap(), 2).unwrap().len(), 6);
    }
}
