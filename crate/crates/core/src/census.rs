//! Deterministic, parallel census over curve families: tallies of
//! (p-rank, a-number), first-witness search, and frequency diagnostics.
//!
//! Curve `i` of a run is a pure function of the spec and `i`: in exhaustive
//! mode it is the `i`-th coefficient tuple in lexicographic order, in random
//! mode its coefficients come from a ChaCha stream keyed by `(seed, i)`.
//! Results therefore do not depend on the number of worker threads.

use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FieldSpec, Fq};
use crate::cartier::{Curve, Model};
use crate::error::{Error, Result};

/// Largest coefficient space an exhaustive run may cover.
pub const MAX_EXHAUSTIVE: u128 = 100_000_000;

/// Default number of curves a search may examine.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Random { n: u64, seed: u64 },
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub model: Model,
    pub mode: Mode,
    pub jobs: usize,
}

/// One aggregated row of a census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub model: Model,
    pub f: usize,
    pub a: usize,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusOutcome {
    /// Sorted by p-rank descending, then a-number ascending.
    pub records: Vec<CensusRecord>,
    /// Curves drawn or enumerated.
    pub processed: u64,
    /// Draws rejected as singular (non-squarefree `f`, or `c3 = 0`).
    pub invalid: u64,
}

impl CensusOutcome {
    pub fn valid(&self) -> u64 {
        self.processed - self.invalid
    }
}

/// A curve with the target invariants. `coeffs` are the model coefficients
/// (for polynomial models the full `f`, lowest degree first) in packed encoding.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub p: u64,
    pub m: u32,
    pub g: usize,
    pub model: Model,
    pub coeffs: Vec<u64>,
    pub f: usize,
    pub a: usize,
}

impl Witness {
    /// Recompute the invariants from the coefficients.
    pub fn verify(&self) -> Result<bool> {
        let field = FieldSpec::new(self.p, self.m)?;
        let coeffs = self.coeffs.iter().map(|&c| field.element(c as u128)).collect::<Result<Vec<_>>>()?;
        let curve = Curve::from_model(&field, self.model, &coeffs)?;
        let inv = curve.invariants()?;
        Ok(curve.genus() == self.g && inv.p_rank == self.f && inv.a_number == self.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Witness),
    Exhausted { examined: u64 },
}

/// Observed frequency of one (f, a) class next to the heuristic `q^-(g-f)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticRow {
    pub f: usize,
    pub a: usize,
    pub count: u64,
    pub frequency: f64,
    pub reference: f64,
}

/// A validated spec bound to its field.
struct Plan {
    spec: SampleSpec,
    field: FieldSpec,
    /// Number of free coefficients per curve.
    arity: usize,
    q: u64,
}

impl Plan {
    fn new(spec: &SampleSpec) -> Result<Self> {
        let field = FieldSpec::new(spec.p, spec.m)?;
        if !spec.model.supports_characteristic(spec.p) {
            return Err(Error::InvalidSpec(format!("{} is not defined in characteristic {}", spec.model, spec.p)));
        }
        if spec.g == 0 {
            return Err(Error::InvalidSpec("genus must be positive".into()));
        }
        if matches!(spec.model, Model::As2Gamma1 | Model::As2Gamma2) && spec.g != 3 {
            return Err(Error::InvalidSpec(format!("{} has genus 3, not {}", spec.model, spec.g)));
        }
        if spec.jobs == 0 {
            return Err(Error::InvalidSpec("jobs must be positive".into()));
        }
        let q = u64::try_from(field.order())
            .map_err(|_| Error::InvalidSpec(format!("field {field} is too large to sample")))?;
        let arity = match spec.model {
            Model::OddPPoly | Model::As2Poly => 2 * spec.g + 1,
            Model::As2Gamma1 | Model::As2Gamma2 => 3,
        };
        let plan = Plan { spec: spec.clone(), field, arity, q };
        if spec.mode == Mode::Exhaustive && plan.space().is_none_or(|s| s > MAX_EXHAUSTIVE) {
            return Err(Error::InvalidSpec(format!(
                "exhaustive space {}^{} exceeds {MAX_EXHAUSTIVE}",
                plan.q, plan.arity
            )));
        }
        Ok(plan)
    }

    fn space(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.arity as u32)
    }

    /// Number of curves the run visits.
    fn len(&self) -> u64 {
        match self.spec.mode {
            Mode::Random { n, .. } => n,
            Mode::Exhaustive => self.space().expect("checked in Plan::new") as u64,
        }
    }

    /// Model coefficients of curve `index`.
    fn coeffs(&self, index: u64) -> Vec<Fq> {
        let mut free = vec![Fq::ZERO; self.arity];
        match self.spec.mode {
            Mode::Exhaustive => {
                // c_0 most significant
                let mut rest = index;
                for slot in free.iter_mut().rev() {
                    *slot = Fq(rest % self.q);
                    rest /= self.q;
                }
            }
            Mode::Random { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(index);
                for slot in free.iter_mut() {
                    *slot = Fq(rng.gen_range(0..self.q));
                }
            }
        }
        if matches!(self.spec.model, Model::OddPPoly | Model::As2Poly) {
            free.push(Fq::ONE);
        }
        free
    }

    /// `(f, a)` of curve `index`, or `None` when the coefficients give no valid curve.
    fn classify(&self, index: u64) -> Result<Option<(usize, usize)>> {
        let coeffs = self.coeffs(index);
        let curve = match Curve::from_model(&self.field, self.spec.model, &coeffs) {
            Ok(c) => c,
            Err(Error::InvalidCurve(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let inv = curve.invariants()?;
        Ok(Some((inv.p_rank, inv.a_number)))
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.spec.jobs)
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))
    }
}

#[derive(Default)]
struct Tally {
    classes: BTreeMap<(usize, usize), u64>,
    invalid: u64,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        for (k, v) in other.classes {
            *self.classes.entry(k).or_default() += v;
        }
        self.invalid += other.invalid;
        self
    }
}

/// Classify every curve of the run and aggregate by `(p_rank, a_number)`.
pub fn run(spec: &SampleSpec) -> Result<CensusOutcome> {
    let plan = Plan::new(spec)?;
    let total = plan.len();
    let tally = plan.pool()?.install(|| {
        (0..total)
            .into_par_iter()
            .try_fold(Tally::default, |mut t, i| {
                match plan.classify(i)? {
                    Some(key) => *t.classes.entry(key).or_default() += 1,
                    None => t.invalid += 1,
                }
                Ok::<_, Error>(t)
            })
            .try_reduce(Tally::default, |a, b| Ok(a.merge(b)))
    })?;
    let mut records: Vec<CensusRecord> = tally
        .classes
        .into_iter()
        .map(|((f, a), count)| CensusRecord { p: spec.p, m: spec.m, g: spec.g, model: spec.model, f, a, count })
        .collect();
    records.sort_by(|x, y| y.f.cmp(&x.f).then(x.a.cmp(&y.a)));
    Ok(CensusOutcome { records, processed: total, invalid: tally.invalid })
}

/// First curve, in run order, with p-rank `target_f` and a-number `target_a`,
/// examining at most `budget` curves.
pub fn search(spec: &SampleSpec, target_f: usize, target_a: usize, budget: u64) -> Result<SearchOutcome> {
    if target_f + target_a > spec.g {
        return Err(Error::InfeasibleTarget { g: spec.g, f: target_f, a: target_a });
    }
    let plan = Plan::new(spec)?;
    let limit = plan.len().min(budget);
    let target = (target_f, target_a);
    let hit = plan.pool()?.install(|| {
        (0..limit)
            .into_par_iter()
            .map(|i| (i, plan.classify(i)))
            .find_first(|(_, r)| r.is_err() || matches!(r, Ok(Some(c)) if *c == target))
    });
    match hit {
        None => Ok(SearchOutcome::Exhausted { examined: limit }),
        Some((_, Err(e))) => Err(e),
        Some((i, Ok(_))) => Ok(SearchOutcome::Found(Witness {
            p: spec.p,
            m: spec.m,
            g: spec.g,
            model: spec.model,
            coeffs: plan.coeffs(i).iter().map(|c| c.index()).collect(),
            f: target_f,
            a: target_a,
        })),
    }
}

/// Per-class frequencies with the heuristic reference `q^-(g-f)`. Informational only.
pub fn diagnostics(records: &[CensusRecord]) -> Vec<DiagnosticRow> {
    let total: u64 = records.iter().map(|r| r.count).sum();
    if total == 0 {
        return Vec::new();
    }
    records
        .iter()
        .map(|r| {
            let q = (r.p as f64).powi(r.m as i32);
            DiagnosticRow {
                f: r.f,
                a: r.a,
                count: r.count,
                frequency: r.count as f64 / total as f64,
                reference: q.powi(-((r.g - r.f) as i32)),
            }
        })
        .collect()
}

/// Write records as CSV with columns `p,m,g,model,f,a,count`.
pub fn write_csv<W: Write>(records: &[CensusRecord], out: W, header: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(header).from_writer(out);
    if header && records.is_empty() {
        w.write_record(["p", "m", "g", "model", "f", "a", "count"]).map_err(csv_err)?;
    }
    for r in records {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

/// Parse CSV written by [`write_csv`] (header required).
pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<CensusRecord>> {
    csv::Reader::from_reader(input).deserialize().map(|r| r.map_err(csv_err)).collect()
}

fn csv_err(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}
