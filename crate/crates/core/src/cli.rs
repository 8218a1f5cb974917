//! Command-line front end. [`run`] parses arguments, dispatches, and returns
//! the process exit code: 0 success, 2 invalid arguments, 3 search exhausted,
//! 4 internal invariant violation.

use std::ffi::OsString;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{FieldSpec, Fq, Poly, SemilinearMap};
use crate::cartier::{ArtinSchreierCurve, CurveDescription, CurveInvariants, HyperellipticCurve, Model};
use crate::census::{self, Mode, SampleSpec, SearchOutcome, DEFAULT_BUDGET};
use crate::dieudonne::{Block, DieudonneModule, Operator};
use crate::eo;
use crate::error::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "ptorsion", version, about = "p-rank, a-number and Ekedahl-Oort computations")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Append to --output instead of overwriting (CSV headers are not repeated).
    #[arg(long, global = true)]
    append: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ekedahl-Oort types.
    #[command(subcommand)]
    Eo(EoCommand),
    /// Dieudonne modules.
    #[command(subcommand)]
    Dd(DdCommand),
    /// Hyperelliptic curves y^2 = f(x), p odd.
    #[command(subcommand)]
    Cm(CurveCommand<CmArgs>),
    /// Artin-Schreier curves y^2 - y = f(x), p = 2.
    #[command(subcommand)]
    As2(CurveCommand<As2Args>),
    /// Census runs and witness searches.
    #[command(subcommand)]
    Census(CensusCommand),
}

#[derive(Subcommand, Debug)]
enum EoCommand {
    /// All types of a genus (lexicographic), with p-rank, a-number and stratum dimension.
    Enumerate {
        #[arg(long)]
        genus: usize,
        #[arg(long)]
        filter_f: Option<usize>,
        #[arg(long)]
        filter_a: Option<usize>,
    },
    /// Number of types of each p-rank.
    Counts {
        #[arg(long)]
        genus: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Ir,
    I32,
    Ordinary,
    Sum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Show {
    EoType,
    F,
    A,
    KerPowers,
    /// The matrices of F and V (JSON only).
    Module,
}

#[derive(Subcommand, Debug)]
enum DdCommand {
    /// Build a module and report invariants.
    Build {
        #[arg(long, value_enum)]
        kind: Kind,
        /// r for `ir`, genus for `ordinary`.
        #[arg(long)]
        r: Option<usize>,
        /// Blocks for `sum`: etale, mult, ord, i32, ir:R.
        #[arg(long, value_delimiter = ',')]
        summands: Vec<String>,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [Show::EoType, Show::F, Show::A])]
        show: Vec<Show>,
    },
}

#[derive(Subcommand, Debug)]
enum CurveCommand<A: Args> {
    /// p-rank, a-number and Cartier matrix of one curve.
    Invariants(A),
}

#[derive(Args, Debug)]
struct CmArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Coefficients of f, lowest degree first; extension elements as c0:c1:...
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    coeffs: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Shape {
    Poly,
    Gamma1,
    Gamma2,
}

#[derive(Args, Debug)]
struct As2Args {
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, value_enum)]
    shape: Shape,
    /// `poly`: coefficients of f lowest first; `gamma1`/`gamma2`: c1,c2,c3.
    #[arg(long, value_delimiter = ',', required = true)]
    coeffs: Vec<String>,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long)]
    genus: usize,
    /// ODD_P_POLY, AS2_POLY, AS2_GAMMA1 or AS2_GAMMA2 (case and -/_ insensitive).
    /// Defaults to the polynomial model for the characteristic.
    #[arg(long)]
    model: Option<String>,
    /// Enumerate the whole coefficient space instead of sampling.
    #[arg(long)]
    exhaustive: bool,
    /// Number of random samples.
    #[arg(long, default_value_t = 1000)]
    n: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "PTORSION_JOBS", default_value_t = 1)]
    jobs: usize,
}

#[derive(Subcommand, Debug)]
enum CensusCommand {
    /// Tally (p-rank, a-number) over a family.
    Run {
        #[command(flatten)]
        args: CensusArgs,
        /// Also print per-class frequencies to standard error.
        #[arg(long)]
        diagnostics: bool,
    },
    /// Find the first curve with given invariants.
    Search {
        #[command(flatten)]
        args: CensusArgs,
        #[arg(long)]
        target_f: usize,
        #[arg(long)]
        target_a: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

/// A command's result before it is written out.
struct Report {
    body: Vec<u8>,
    code: i32,
}

struct Ctx {
    format: Format,
    /// Whether CSV output starts with a header.
    header: bool,
}

/// Run the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let existing = cli.append && cli.output.as_ref().is_some_and(|p| std::fs::metadata(p).is_ok_and(|m| m.len() > 0));
    let ctx = Ctx { format: cli.format, header: !existing };
    let report = match dispatch(&cli.command, &ctx, err) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cli.output {
        None => out.write_all(&report.body),
        Some(path) => OpenOptions::new()
            .create(true)
            .write(true)
            .append(cli.append)
            .truncate(!cli.append)
            .open(path)
            .and_then(|mut f| f.write_all(&report.body)),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    report.code
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Invariant(_) | Error::CartierClosure { .. } => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

fn dispatch(cmd: &Command, ctx: &Ctx, err: &mut dyn Write) -> Result<Report, Error> {
    match cmd {
        Command::Eo(EoCommand::Enumerate { genus, filter_f, filter_a }) => {
            eo_enumerate(ctx, *genus, *filter_f, *filter_a)
        }
        Command::Eo(EoCommand::Counts { genus }) => eo_counts(ctx, *genus),
        Command::Dd(DdCommand::Build { kind, r, summands, p, m, show }) => {
            dd_build(ctx, *kind, *r, summands, *p, *m, show)
        }
        Command::Cm(CurveCommand::Invariants(a)) => cm_invariants(ctx, a),
        Command::As2(CurveCommand::Invariants(a)) => as2_invariants(ctx, a),
        Command::Census(CensusCommand::Run { args, diagnostics }) => census_run(ctx, args, *diagnostics, err),
        Command::Census(CensusCommand::Search { args, target_f, target_a, budget }) => {
            census_search(ctx, args, *target_f, *target_a, *budget, err)
        }
    }
}

/// Render rows of string cells as CSV.
fn csv_table(ctx: &Ctx, header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Parse(e.to_string());
    if ctx.header {
        w.write_record(header).map_err(io)?;
    }
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    w.into_inner().map_err(|e| Error::Parse(e.to_string()))
}

fn json_body<T: Serialize>(value: &T) -> Result<Vec<u8>, Error> {
    let mut body = serde_json::to_vec_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
    body.push(b'\n');
    Ok(body)
}

fn ok(body: Vec<u8>) -> Result<Report, Error> {
    Ok(Report { body, code: EXIT_OK })
}

fn eo_enumerate(ctx: &Ctx, genus: usize, ff: Option<usize>, fa: Option<usize>) -> Result<Report, Error> {
    let types: Vec<_> = eo::iter_types(genus)?
        .filter(|t| ff.is_none_or(|f| t.p_rank() == f) && fa.is_none_or(|a| t.a_number() == a))
        .collect();
    match ctx.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = types
                .iter()
                .map(|t| {
                    vec![t.to_string(), t.p_rank().to_string(), t.a_number().to_string(), t.stratum_dim().to_string()]
                })
                .collect();
            ok(csv_table(ctx, &["nu", "f", "a", "dim"], &rows)?)
        }
        Format::Json => {
            let rows: Vec<Value> = types
                .iter()
                .map(|t| json!({"nu": t, "f": t.p_rank(), "a": t.a_number(), "dim": t.stratum_dim()}))
                .collect();
            ok(json_body(&rows)?)
        }
    }
}

fn eo_counts(ctx: &Ctx, genus: usize) -> Result<Report, Error> {
    let table = eo::count_by_p_rank(genus)?;
    match ctx.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = table.iter().map(|(f, c)| vec![f.to_string(), c.to_string()]).collect();
            ok(csv_table(ctx, &["f", "count"], &rows)?)
        }
        Format::Json => {
            let rows: Vec<Value> = table.iter().map(|(f, c)| json!({"f": f, "count": c})).collect();
            ok(json_body(&rows)?)
        }
    }
}

fn dd_build(
    ctx: &Ctx,
    kind: Kind,
    r: Option<usize>,
    summands: &[String],
    p: u64,
    m: u32,
    show: &[Show],
) -> Result<Report, Error> {
    let field = FieldSpec::new(p, m)?;
    let need_r = || r.ok_or_else(|| Error::Parse("--r is required for this kind".into()));
    let module = match kind {
        Kind::Ir => DieudonneModule::ir(&field, need_r()?)?,
        Kind::I32 => DieudonneModule::i32(&field),
        Kind::Ordinary => {
            let g = need_r()?;
            if g == 0 {
                return Err(Error::GenusOutOfRange(0));
            }
            DieudonneModule::ordinary(&field, g)
        }
        Kind::Sum => {
            let blocks = summands.iter().map(|s| s.parse::<Block>()).collect::<Result<Vec<_>, _>>()?;
            DieudonneModule::from_blocks(&field, &blocks)?
        }
    };
    let ker = |op| (1..=module.dim()).map(|n| module.kernel_power(op, n)).collect::<Vec<_>>();
    let mut fields: Vec<(&str, Value, String)> = Vec::new();
    for s in show {
        match s {
            Show::EoType => {
                let t = module.eo_type()?;
                fields.push(("eo_type", json!(t), t.to_string()));
            }
            Show::F => {
                let f = module.p_rank()?;
                fields.push(("f", json!(f), f.to_string()));
            }
            Show::A => {
                let a = module.a_number()?;
                fields.push(("a", json!(a), a.to_string()));
            }
            Show::KerPowers => {
                let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
                let (kf, kv) = (ker(Operator::F), ker(Operator::V));
                fields.push(("ker_f", json!(kf), join(&kf)));
                fields.push(("ker_v", json!(kv), join(&kv)));
            }
            Show::Module => {
                if ctx.format == Format::Csv {
                    return Err(Error::Parse("--show module needs --format json".into()));
                }
                fields.push(("module", json!(module.to_description()), String::new()));
            }
        }
    }
    match ctx.format {
        Format::Csv => {
            let header: Vec<&str> = fields.iter().map(|f| f.0).collect();
            let row: Vec<String> = fields.iter().map(|f| f.2.clone()).collect();
            ok(csv_table(ctx, &header, &[row])?)
        }
        Format::Json => {
            let obj: serde_json::Map<String, Value> = fields.into_iter().map(|(k, v, _)| (k.to_string(), v)).collect();
            ok(json_body(&obj)?)
        }
    }
}

fn parse_coeffs(field: &FieldSpec, coeffs: &[String]) -> Result<Vec<Fq>, Error> {
    coeffs
        .iter()
        .map(|c| match c.trim().parse::<i64>() {
            Ok(n) if n < 0 && field.degree() == 1 => Ok(field.from_int(n)),
            _ => field.parse_element(c),
        })
        .collect()
}

fn matrix_entries(map: &SemilinearMap) -> Vec<Vec<u64>> {
    map.matrix().to_rows().into_iter().map(|r| r.into_iter().map(Fq::index).collect()).collect()
}

fn curve_report(ctx: &Ctx, desc: &CurveDescription, inv: &CurveInvariants) -> Result<Report, Error> {
    match ctx.format {
        Format::Csv => {
            let row = vec![
                desc.p.to_string(),
                desc.m.to_string(),
                desc.g.to_string(),
                desc.model.to_string(),
                inv.p_rank.to_string(),
                inv.a_number.to_string(),
            ];
            ok(csv_table(ctx, &["p", "m", "g", "model", "f", "a"], &[row])?)
        }
        Format::Json => ok(json_body(&json!({
            "curve": desc,
            "f": inv.p_rank,
            "a": inv.a_number,
            "cartier_matrix": matrix_entries(&inv.cartier_matrix),
        }))?),
    }
}

fn cm_invariants(ctx: &Ctx, a: &CmArgs) -> Result<Report, Error> {
    let field = FieldSpec::new(a.p, a.m)?;
    let coeffs = parse_coeffs(&field, &a.coeffs)?;
    let curve = HyperellipticCurve::from_coeffs(&field, &coeffs)?;
    let desc = CurveDescription::new(&field, Model::OddPPoly, &coeffs)?;
    curve_report(ctx, &desc, &curve.invariants())
}

fn as2_invariants(ctx: &Ctx, a: &As2Args) -> Result<Report, Error> {
    let field = FieldSpec::new(2, a.m)?;
    let coeffs = parse_coeffs(&field, &a.coeffs)?;
    let (curve, model) = match a.shape {
        Shape::Poly => (ArtinSchreierCurve::poly(&field, &Poly::new(coeffs.clone()))?, Model::As2Poly),
        Shape::Gamma1 | Shape::Gamma2 => {
            let &[c1, c2, c3] = coeffs.as_slice() else {
                return Err(Error::Parse(format!("{:?} takes exactly 3 coefficients", a.shape)));
            };
            if a.shape == Shape::Gamma1 {
                (ArtinSchreierCurve::gamma1(&field, c1, c2, c3)?, Model::As2Gamma1)
            } else {
                (ArtinSchreierCurve::gamma2(&field, c1, c2, c3)?, Model::As2Gamma2)
            }
        }
    };
    let desc = CurveDescription::new(&field, model, &coeffs)?;
    curve_report(ctx, &desc, &curve.invariants()?)
}

fn sample_spec(a: &CensusArgs) -> Result<SampleSpec, Error> {
    Ok(SampleSpec {
        p: a.p,
        m: a.m,
        g: a.genus,
        model: match &a.model {
            Some(name) => name.parse()?,
            None if a.p == 2 => Model::As2Poly,
            None => Model::OddPPoly,
        },
        mode: if a.exhaustive { Mode::Exhaustive } else { Mode::Random { n: a.n, seed: a.seed } },
        jobs: a.jobs,
    })
}

fn census_run(ctx: &Ctx, a: &CensusArgs, diagnostics: bool, err: &mut dyn Write) -> Result<Report, Error> {
    let spec = sample_spec(a)?;
    let outcome = census::run(&spec)?;
    let _ = writeln!(err, "processed {} curves, {} invalid", outcome.processed, outcome.invalid);
    if diagnostics {
        let _ = writeln!(err, "f,a,count,frequency,reference");
        for d in census::diagnostics(&outcome.records) {
            let _ = writeln!(err, "{},{},{},{:.6},{:.6}", d.f, d.a, d.count, d.frequency, d.reference);
        }
    }
    match ctx.format {
        Format::Csv => {
            let mut body = Vec::new();
            census::write_csv(&outcome.records, &mut body, ctx.header)?;
            ok(body)
        }
        Format::Json => ok(json_body(&outcome.records)?),
    }
}

fn census_search(
    ctx: &Ctx,
    a: &CensusArgs,
    target_f: usize,
    target_a: usize,
    budget: u64,
    err: &mut dyn Write,
) -> Result<Report, Error> {
    let spec = sample_spec(a)?;
    match census::search(&spec, target_f, target_a, budget)? {
        SearchOutcome::Exhausted { examined } => {
            let _ = writeln!(err, "EXHAUSTED after {examined} curves");
            Ok(Report { body: Vec::new(), code: EXIT_EXHAUSTED })
        }
        SearchOutcome::Found(w) => {
            if !w.verify()? {
                return Err(Error::Invariant("witness does not re-verify".into()));
            }
            match ctx.format {
                Format::Json => ok(json_body(&w)?),
                Format::Csv => {
                    let coeffs = w.coeffs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
                    let row = vec![
                        w.p.to_string(),
                        w.m.to_string(),
                        w.g.to_string(),
                        w.model.to_string(),
                        coeffs,
                        w.f.to_string(),
                        w.a.to_string(),
                    ];
                    ok(csv_table(ctx, &["p", "m", "g", "model", "coeffs", "f", "a"], &[row])?)
                }
            }
        }
    }
}
