//! Ekedahl-Oort types `[nu_1, ..., nu_g]`: validity, enumeration, and the
//! p-rank, a-number and stratum dimension read off a type.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest genus accepted by the enumeration routines.
pub const MAX_GENUS: usize = 30;

/// An Ekedahl-Oort type. Valid sequences satisfy `nu_1 <= 1` and
/// `nu_i <= nu_{i+1} <= nu_i + 1`; the genus is the length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct EoType {
    nu: Vec<u32>,
}

impl EoType {
    pub fn new(nu: Vec<u32>) -> Result<Self> {
        if !is_valid(&nu) {
            return Err(Error::InvalidEoSequence(nu));
        }
        Ok(EoType { nu })
    }

    pub fn genus(&self) -> usize {
        self.nu.len()
    }

    pub fn nu(&self) -> &[u32] {
        &self.nu
    }

    /// `max{i : nu_i = i}`, or 0.
    pub fn p_rank(&self) -> usize {
        self.nu.iter().enumerate().filter(|&(i, &v)| v as usize == i + 1).map(|(i, _)| i + 1).max().unwrap_or(0)
    }

    /// `g - nu_g`.
    pub fn a_number(&self) -> usize {
        self.genus() - self.nu.last().copied().unwrap_or(0) as usize
    }

    /// Dimension of the stratum, `sum nu_i`.
    pub fn stratum_dim(&self) -> usize {
        self.nu.iter().map(|&v| v as usize).sum()
    }

    /// `[0, 1, ..., r - 1]`, the type of `I_r`.
    pub fn of_ir(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::GenusOutOfRange(r));
        }
        Ok(EoType { nu: (0..r as u32).collect() })
    }

    /// `[1, 2, ..., g]`.
    pub fn ordinary(g: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::GenusOutOfRange(g));
        }
        Ok(EoType { nu: (1..=g as u32).collect() })
    }
}

fn is_valid(nu: &[u32]) -> bool {
    let Some(&first) = nu.first() else {
        return false;
    };
    first <= 1 && nu.windows(2).all(|w| w[0] <= w[1] && w[1] <= w[0] + 1)
}

impl TryFrom<Vec<u32>> for EoType {
    type Error = Error;

    fn try_from(nu: Vec<u32>) -> Result<Self> {
        EoType::new(nu)
    }
}

impl From<EoType> for Vec<u32> {
    fn from(t: EoType) -> Vec<u32> {
        t.nu
    }
}

impl fmt::Display for EoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.nu.iter().map(u32::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl std::str::FromStr for EoType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
        let nu = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        EoType::new(nu)
    }
}

fn check_genus(g: usize) -> Result<()> {
    if g == 0 || g > MAX_GENUS {
        return Err(Error::GenusOutOfRange(g));
    }
    Ok(())
}

/// Iterator over all `2^g` types of genus `g` in lexicographic order.
///
/// A type is determined by its increments `nu_i - nu_{i-1}` in `{0, 1}`
/// (with `nu_0 = 0`), and lexicographic order on types is lexicographic
/// order on increment words, so the `n`-th type reads its increments off
/// the bits of `n`, most significant first.
pub fn iter_types(g: usize) -> Result<impl Iterator<Item = EoType>> {
    check_genus(g)?;
    Ok((0u64..1 << g).map(move |n| {
        let mut level = 0;
        let nu = (0..g)
            .map(|i| {
                level += ((n >> (g - 1 - i)) & 1) as u32;
                level
            })
            .collect();
        EoType { nu }
    }))
}

/// All types of genus `g`, lexicographically ordered.
pub fn enumerate(g: usize) -> Result<Vec<EoType>> {
    Ok(iter_types(g)?.collect())
}

/// Number of types of each p-rank: `2^(g-f-1)` for `f < g`, and 1 for `f = g`.
pub fn count_by_p_rank(g: usize) -> Result<BTreeMap<usize, u64>> {
    check_genus(g)?;
    let mut table: BTreeMap<usize, u64> = (0..g).map(|f| (f, 1u64 << (g - f - 1))).collect();
    table.insert(g, 1);
    Ok(table)
}
