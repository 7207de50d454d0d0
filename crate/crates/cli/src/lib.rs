//! Command-line runner for the `coinv-core` certification suites.
//!
//! [`run`] parses arguments, executes one suite and renders a [`Report`].
//! Exit codes: 0 certified, 1 mismatch, 2 inconclusive, 3 usage or input error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use coinv_core::catalg::{hom_vanishing, intertwiner_space, main_correspondence_check, ComoduleSpace};
use coinv_core::classical::{fft1_check, fft2_check};
use coinv_core::comod::{CoinvSetting, Status, DEFAULT_SEED};
use coinv_core::freealg::theta_matrix;
use coinv_core::hopf::{check_hopf_compat, FMatrix, HopfPresentation};
use coinv_core::{Error, Rational};
use serde_json::{json, Value};

mod report;

pub use report::{Case, Params, Report, SCHEMA_VERSION};

pub const EXIT_USAGE: i32 = 3;

/// Directory for persisted quotient bases, if set.
pub const CACHE_ENV: &str = "COINV_CACHE_DIR";

#[derive(Debug, Parser)]
#[command(name = "coinv", version, about = "Exact certification of coinvariants, intertwiners and classical invariant theory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Certify dim of bidegree-(k,k) coinvariants = rank θ_k = (mn)^k.
    CertifyFft {
        #[command(flatten)]
        range: DegreeRange,
        #[command(flatten)]
        common: Common,
    },
    /// Coinvariants of bidegree (i,j); off-diagonal bidegrees use the grading certificate.
    Coinvariants {
        #[arg(short)]
        i: usize,
        #[arg(short)]
        j: usize,
        /// Also multiply this many random pairs of coinvariants and certify the products.
        #[arg(long, default_value_t = 0)]
        samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Rank of the degree-k component of θ.
    ThetaRank {
        #[command(flatten)]
        range: DegreeRange,
        #[command(flatten)]
        common: Common,
    },
    /// Intertwiners (U^m)^{⊗i} → (U^n)^{⊗j} for the fundamental comodule U.
    Intertwiners {
        #[arg(short)]
        i: usize,
        #[arg(short)]
        j: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Hopf structure maps respect the relations (d auto = 4).
    HopfCheck {
        #[command(flatten)]
        common: Common,
    },
    /// Classical invariants and the kernel of θ* against the minors ideal.
    Classical {
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
        #[command(flatten)]
        common: Common,
    },
    /// The coinvariant-to-morphism map sends θ(w) to ψ(w) for every degree-k word.
    Correspondence {
        #[command(flatten)]
        range: DegreeRange,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct DegreeRange {
    #[arg(short, default_value_t = 1)]
    k: usize,
    /// Run every degree 0..=k instead of k alone.
    #[arg(long)]
    up_to: bool,
}

impl DegreeRange {
    fn degrees(&self) -> Vec<usize> {
        if self.up_to {
            (0..=self.k).collect()
        } else {
            vec![self.k]
        }
    }
}

#[derive(Debug, Args)]
struct Common {
    #[arg(short, default_value_t = 1)]
    m: usize,
    #[arg(short, default_value_t = 1)]
    n: usize,
    #[arg(short, default_value_t = 1)]
    t: usize,
    /// preset:identity | preset:diag:1,2,... | preset:jordan | file:PATH (JSON t×t array of "p/q" strings)
    #[arg(long = "F", default_value = "preset:identity")]
    f: String,
    /// Truncation degree, or "auto": i+j+2 for bidegree (i,j) (2k+2 for degree k), 4 for hopf-check.
    #[arg(short, default_value = "auto")]
    d: Truncation,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
    /// Record wall-clock milliseconds per case (reports are then not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Truncation {
    Auto,
    Fixed(usize),
}

impl FromStr for Truncation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(Truncation::Auto);
        }
        s.parse().map(Truncation::Fixed).map_err(|_| format!("expected an integer or \"auto\", got {s:?}"))
    }
}

impl Truncation {
    fn resolve(self, auto: usize) -> usize {
        match self {
            Truncation::Auto => auto,
            Truncation::Fixed(d) => d,
        }
    }

    fn to_value(self) -> Value {
        match self {
            Truncation::Auto => json!("auto"),
            Truncation::Fixed(d) => json!(d),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl Outcome {
    fn usage(msg: String) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: msg, report: None }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: text, stderr: String::new(), report: None }
                }
                _ => Outcome::usage(text),
            };
        }
    };
    let common = cli.command.common();
    let (format, timings) = (common.format, common.timings);
    let result = with_jobs(common.jobs, || execute(&cli.command));
    match result {
        Ok(report) => {
            let stdout = match format {
                Format::Text => report.to_text(timings),
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(timings),
            };
            Outcome { code: report.exit_code(), stdout, stderr: String::new(), report: Some(report) }
        }
        Err(e) => {
            let code = match e {
                Error::Internal(_) => 1,
                Error::NotCoinvariant => 2,
                _ => EXIT_USAGE,
            };
            Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n"), report: None }
        }
    }
}

#[cfg(feature = "parallel")]
fn with_jobs<R: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<R, Error> + Send) -> Result<R, Error> {
    match jobs {
        None => f(),
        Some(0) => Err(Error::Precondition("--jobs must be positive".into())),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| Error::Internal(e.to_string()))?;
            pool.install(f)
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<R>(jobs: Option<usize>, f: impl FnOnce() -> Result<R, Error>) -> Result<R, Error> {
    match jobs {
        Some(0) => Err(Error::Precondition("--jobs must be positive".into())),
        _ => f(),
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::CertifyFft { common, .. }
            | Command::Coinvariants { common, .. }
            | Command::ThetaRank { common, .. }
            | Command::Intertwiners { common, .. }
            | Command::HopfCheck { common }
            | Command::Classical { common, .. }
            | Command::Correspondence { common, .. } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::CertifyFft { .. } => "certify-fft",
            Command::Coinvariants { .. } => "coinvariants",
            Command::ThetaRank { .. } => "theta-rank",
            Command::Intertwiners { .. } => "intertwiners",
            Command::HopfCheck { .. } => "hopf-check",
            Command::Classical { .. } => "classical",
            Command::Correspondence { .. } => "correspondence",
        }
    }
}

/// Parses `preset:identity`, `preset:diag:a,b,…`, `preset:jordan` or `file:PATH`.
pub fn parse_f(source: &str, t: usize) -> Result<FMatrix, Error> {
    let f = if let Some(path) = source.strip_prefix("file:") {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        FMatrix::from_json(&text)?
    } else {
        let preset = source.strip_prefix("preset:").unwrap_or(source);
        match preset {
            "identity" => FMatrix::identity(t)?,
            "jordan" => FMatrix::jordan(t)?,
            _ => match preset.strip_prefix("diag:") {
                Some(list) => {
                    let entries = list.split(',').map(|x| x.trim().parse::<Rational>()).collect::<Result<Vec<_>, _>>()?;
                    FMatrix::diag(&entries)?
                }
                None => return Err(Error::Parse(format!("unknown F source {source:?}"))),
            },
        }
    };
    if f.t() != t {
        return Err(Error::Precondition(format!("F is {0}x{0} but t = {t}", f.t())));
    }
    Ok(f)
}

struct Context {
    common_params: Params,
    hopf: Arc<HopfPresentation>,
}

fn context(c: &Common) -> Result<Context, Error> {
    if c.m == 0 || c.n == 0 || c.t == 0 {
        return Err(Error::Precondition("m, n and t must be positive".into()));
    }
    let f = parse_f(&c.f, c.t)?;
    let hopf = Arc::new(HopfPresentation::new(&f)?);
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        hopf.set_cache_dir(dir);
    }
    let common_params = Params { m: c.m, n: c.n, t: c.t, f: f.to_strings(), k: None, i: None, j: None, d: c.d.to_value(), seed: c.seed };
    Ok(Context { common_params, hopf })
}

fn timed<R>(timings: bool, f: impl FnOnce() -> R) -> (R, u64) {
    let start = Instant::now();
    let r = f();
    (r, if timings { start.elapsed().as_millis() as u64 } else { 0 })
}

fn execute(cmd: &Command) -> Result<Report, Error> {
    let c = cmd.common();
    let ctx = context(c)?;
    let mut params = ctx.common_params.clone();
    let mut summary = BTreeMap::new();
    let cases = match cmd {
        Command::CertifyFft { range, .. } => {
            params.k = Some(range.k);
            let s = CoinvSetting::with_hopf(c.m, c.n, ctx.hopf.clone())?;
            let mut cases = Vec::new();
            for k in range.degrees() {
                let d = c.d.resolve(2 * k + 2);
                let (r, millis) = timed(c.timings, || s.certify_fft(k, d));
                let r = r?;
                let mut case = Case::new(Some([k, k]), r.status()).with("d", d).with("expected", r.expected_dim);
                case.dim_coinv = Some(r.dim_coinv);
                case.dim_theta = Some(r.dim_theta);
                case.witness_degree = r.witness_degree;
                case.millis = millis;
                cases.push(case);
            }
            cases
        }
        Command::Coinvariants { i, j, samples, .. } => {
            let (i, j) = (*i, *j);
            params.i = Some(i);
            params.j = Some(j);
            let s = CoinvSetting::with_hopf(c.m, c.n, ctx.hopf.clone())?;
            let d = c.d.resolve(i + j + 2);
            let (case, millis) = timed(c.timings, || -> Result<Case, Error> {
                if i != j {
                    let cert = s.off_diagonal_vanish(i, j)?;
                    let computed = s.coinvariants(i, j, d)?;
                    if computed.dim() != 0 {
                        return Err(Error::Internal(format!("nonzero coinvariants in bidegree ({i},{j})")));
                    }
                    let mut case = Case::new(Some([i, j]), Status::Certified).with("d", d).with("grading_exponent", cert.exponent);
                    case.dim_coinv = Some(0);
                    case.dim_theta = Some(0);
                    case.witness_degree = Some(0);
                    Ok(case)
                } else {
                    let r = s.certify_fft(i, d)?;
                    let mut case = Case::new(Some([i, i]), r.status()).with("d", d).with("expected", r.expected_dim);
                    case.dim_coinv = Some(r.dim_coinv);
                    case.dim_theta = Some(r.dim_theta);
                    case.witness_degree = r.witness_degree;
                    Ok(case)
                }
            });
            let mut case = case?;
            case.millis = millis;
            let mut cases = vec![case];
            if *samples > 0 {
                let r = s.subalgebra_check(*samples, d, c.seed)?;
                let status = if r.failures.is_empty() { Status::Certified } else { Status::Inconclusive };
                summary.insert("products_certified".into(), json!(format!("{}/{}", r.certified, r.samples)));
                if status != Status::Certified {
                    cases.push(Case::new(None, status).with("relation", "products").with("failures", r.failures.len()));
                }
            }
            cases
        }
        Command::ThetaRank { range, .. } => {
            params.k = Some(range.k);
            let mut cases = Vec::new();
            for k in range.degrees() {
                let (comp, millis) = timed(c.timings, || theta_matrix(c.m, c.n, c.t, k));
                let comp = comp?;
                let expected = (c.m * c.n).pow(k as u32);
                let status = if comp.rank == expected { Status::Certified } else { Status::Mismatch };
                let mut case = Case::new(Some([k, k]), status).with("expected", expected).with("words", comp.matrix.ncols());
                case.dim_theta = Some(comp.rank);
                case.millis = millis;
                cases.push(case);
            }
            cases
        }
        Command::Intertwiners { i, j, .. } => {
            let (i, j) = (*i, *j);
            params.i = Some(i);
            params.j = Some(j);
            let d = c.d.resolve(i + j + 2);
            let (maps, millis) = timed(c.timings, || intertwiner_space(&ctx.hopf, c.m, c.n, i, j, d));
            let dim = maps?.len();
            let u = ComoduleSpace::u_left(&ctx.hopf);
            let vanishing = hom_vanishing(&u.multiple(c.m)?.tensor_power(i)?, &u.multiple(c.n)?.tensor_power(j)?);
            let expected = if i == j { (c.m * c.n).pow(i as u32) } else { 0 };
            let status = match dim.cmp(&expected) {
                std::cmp::Ordering::Equal if i == j || vanishing.is_some() => Status::Certified,
                std::cmp::Ordering::Less => Status::Inconclusive,
                _ => Status::Mismatch,
            };
            let mut case = Case::new(Some([i, j]), status).with("d", d).with("dim_hom", dim).with("expected", expected);
            if let Some((e, f)) = vanishing {
                case = case.with("source_exponent", e).with("target_exponent", f);
            }
            case.millis = millis;
            vec![case]
        }
        Command::HopfCheck { .. } => {
            let d = c.d.resolve(4);
            let (r, millis) = timed(c.timings, || check_hopf_compat(&ctx.hopf, d));
            let r = r?;
            summary.insert("coassociative_on_generators".into(), json!(r.coassociative_on_generators));
            summary.insert("counital_on_generators".into(), json!(r.counital_on_generators));
            summary.insert("d".into(), json!(d));
            let mut cases: Vec<Case> = r
                .relations
                .iter()
                .map(|rel| {
                    let status = if !rel.counit_zero {
                        Status::Mismatch
                    } else if rel.delta.is_certified() && rel.antipode.is_certified() {
                        Status::Certified
                    } else {
                        Status::Inconclusive
                    };
                    Case::new(None, status)
                        .with("relation", rel.relation.clone())
                        .with("counit_zero", rel.counit_zero)
                        .with("delta", rel.delta.is_certified())
                        .with("antipode", rel.antipode.is_certified())
                })
                .collect();
            if !(r.coassociative_on_generators && r.counital_on_generators) {
                cases.push(Case::new(None, Status::Mismatch).with("relation", "generators"));
            }
            if let Some(first) = cases.first_mut() {
                first.millis = millis;
            }
            cases
        }
        Command::Classical { max_degree, .. } => {
            params.k = Some(*max_degree);
            let (reports, millis) = timed(c.timings, || (fft1_check(c.m, c.n, c.t, *max_degree), fft2_check(c.m, c.n, c.t, *max_degree)));
            let (r1, r2) = reports;
            summary.insert("millis_total".into(), json!(millis));
            r1.rows
                .iter()
                .zip(&r2.rows)
                .map(|(a, b)| {
                    let status = if a.equal && b.equal { Status::Certified } else { Status::Mismatch };
                    let mut case = Case::new(Some([a.degree, a.degree]), status)
                        .with("invariants_dim", a.invariants_dim)
                        .with("odd_invariants_dim", a.odd_invariants_dim)
                        .with("kernel_dim", b.kernel_dim)
                        .with("minors_dim", b.minors_dim);
                    case.dim_theta = Some(a.image_dim);
                    case
                })
                .collect()
        }
        Command::Correspondence { range, .. } => {
            params.k = Some(range.k);
            let s = CoinvSetting::with_hopf(c.m, c.n, ctx.hopf.clone())?;
            let mut cases = Vec::new();
            for k in range.degrees() {
                let d = c.d.resolve(2 * k + 2);
                let (r, millis) = timed(c.timings, || main_correspondence_check(&s, k, d));
                let mut case = match r {
                    Ok(r) => {
                        let status = if r.passed() { Status::Certified } else { Status::Mismatch };
                        let mut case = Case::new(Some([k, k]), status)
                            .with("d", d)
                            .with("words", r.words)
                            .with("equalities", r.equalities)
                            .with("psi_rank", r.psi_rank)
                            .with("end_u_dim", r.end_u_dim);
                        case.dim_theta = Some(r.words);
                        case
                    }
                    Err(Error::NotCoinvariant) => Case::new(Some([k, k]), Status::Inconclusive).with("d", d),
                    Err(e) => return Err(e),
                };
                case.millis = millis;
                cases.push(case);
            }
            cases
        }
    };
    if !c.timings {
        summary.remove("millis_total");
    }
    Ok(Report::new(cmd.name(), params, cases, summary))
}
