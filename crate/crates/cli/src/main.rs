//! `evocount`: counts isomorphism classes of idempotent evolution algebras
//! over finite fields and cross-checks the counting methods.

mod render;
mod validate;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::anyhow;
use clap::{Args, Parser, Subcommand, ValueEnum};
use evocount::field::prime_power;
use evocount::{
    count_with, enumerate_orbits, formula_report, make_field, Budget, CaseKey, CountReport, Error, FieldCtx, Method,
};

/// Exit status for invalid input.
const EXIT_INPUT: u8 = 1;
/// Exit status when a method is infeasible within the budget.
const EXIT_INFEASIBLE: u8 = 2;
/// Exit status when methods disagree.
const EXIT_MISMATCH: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "evocount",
    version,
    about = "Count idempotent evolution algebras over finite fields up to isomorphism"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Enumeration budget: bound on q^(n^2) and on |GL_n|·|G| for exhaustive scans.
    #[arg(long, global = true, env = "EVOCOUNT_BUDGET", default_value_t = Budget::DEFAULT_ENUMERATION)]
    budget: u64,
    /// Worker threads for the Burnside sum (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct FieldArgs {
    /// Field order q = p^m.
    #[arg(long, conflicts_with_all = ["p", "m"])]
    q: Option<u64>,
    /// Field characteristic.
    #[arg(long, requires = "m")]
    p: Option<u64>,
    /// Extension degree.
    #[arg(long, requires = "p")]
    m: Option<u32>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count classes in dimension n over F_q.
    Count {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value = "burnside", value_parser = parse_method)]
        method: Method,
    },
    /// Run every feasible method on each instance and compare N and B(μ).
    Validate {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        /// Field orders, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5])]
        q: Vec<u64>,
    },
    /// One row per field order: q, p, m, divisibility flags and N per method.
    Table {
        #[arg(long)]
        n: usize,
        /// Field orders, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        q: Vec<u64>,
        /// Methods to tabulate, comma separated; `all` keeps the feasible ones.
        #[arg(long, value_delimiter = ',', default_value = "formula,burnside", value_parser = parse_method)]
        method: Vec<Method>,
    },
    /// List orbit representatives (entry codes, row-major) with orbit sizes.
    Orbits {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

/// A failure with its exit status.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    pub fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: EXIT_INPUT,
            error: error.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = exit_code(&e);
        Failure { code, error: e.into() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::input(e)
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } | Error::Overflow(_) => EXIT_INFEASIBLE,
        Error::InternalConsistency(_) => EXIT_MISMATCH,
        _ => EXIT_INPUT,
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// Rendered output and the exit status to finish with.
pub struct Output {
    pub text: String,
    pub code: u8,
}

impl Output {
    pub fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Field order from `--q` or `--p/--m`, checked to be a prime power.
fn field_order(args: &FieldArgs) -> Outcome<u64> {
    match (args.q, args.p, args.m) {
        (Some(q), None, None) => prime_power(q)
            .map(|_| q)
            .ok_or_else(|| Failure::input(anyhow!("q = {q} is not a prime power"))),
        (None, Some(p), Some(m)) => {
            let q = p
                .checked_pow(m)
                .ok_or_else(|| Failure::input(anyhow!("p^m = {p}^{m} overflows")))?;
            match prime_power(q) {
                Some((pp, mm)) if pp == p && mm == m => Ok(q),
                _ => Err(Failure::input(anyhow!("p = {p} is not prime or m = {m} is zero"))),
            }
        }
        _ => Err(Failure::input(anyhow!("give the field as --q Q or as --p P --m M"))),
    }
}

pub fn field(q: u64) -> Outcome<FieldCtx> {
    let (p, m) = prime_power(q).ok_or_else(|| Failure::input(anyhow!("q = {q} is not a prime power")))?;
    Ok(make_field(p, m)?)
}

/// Runs one concrete method. Closed forms need no field tables, so they
/// work for any prime power.
pub fn run_method(n: usize, q: u64, method: Method, budget: &Budget) -> Result<CountReport, Error> {
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be at least 1".into()));
    }
    match method {
        Method::Formula => formula_report(n, &CaseKey::from_q(q)?),
        _ => {
            let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
            count_with(&make_field(p, m)?, n, method, budget)
        }
    }
}

fn feasible_skip(e: &Error) -> bool {
    matches!(
        e,
        Error::BudgetExceeded { .. } | Error::Unsupported(_) | Error::Overflow(_)
    )
}

fn cmd_count(n: usize, q: u64, method: Method, budget: &Budget, format: Format) -> Outcome<Output> {
    if method != Method::All {
        let report = run_method(n, q, method, budget)?;
        return Ok(Output::ok(render::count(&[report], format, false)));
    }
    let mut reports = Vec::new();
    for m in Method::CONCRETE {
        match run_method(n, q, m, budget) {
            Ok(r) => reports.push(r),
            Err(e) if feasible_skip(&e) => eprintln!("note: {m} skipped: {e}"),
            Err(e) => return Err(e.into()),
        }
    }
    if reports.is_empty() {
        return Err(Failure {
            code: EXIT_INFEASIBLE,
            error: anyhow!("no method is feasible for n={n}, q={q}"),
        });
    }
    let text = render::count(&reports, format, true);
    if let Some(r) = reports.iter().find(|r| r.count != reports[0].count) {
        eprintln!(
            "error: methods disagree: {} gives {}, {} gives {}",
            reports[0].method, reports[0].count, r.method, r.count
        );
        return Ok(Output {
            text,
            code: EXIT_MISMATCH,
        });
    }
    Ok(Output::ok(text))
}

fn cmd_table(n: usize, qs: &[u64], methods: &[Method], budget: &Budget, format: Format) -> Outcome<Output> {
    let keep_feasible = methods.contains(&Method::All);
    let methods: Vec<Method> = if keep_feasible {
        Method::CONCRETE.to_vec()
    } else {
        let mut m = methods.to_vec();
        m.dedup();
        m
    };
    let mut rows = Vec::new();
    for &q in qs {
        let key = CaseKey::from_q(q).map_err(Failure::input)?;
        let mut counts = Vec::new();
        for &m in &methods {
            match run_method(n, q, m, budget) {
                Ok(r) => counts.push(Some(r.count)),
                Err(e) if keep_feasible && feasible_skip(&e) => counts.push(None),
                Err(e) => return Err(e.into()),
            }
        }
        rows.push(render::TableRow { key, counts });
    }
    Ok(Output::ok(render::table(n, &methods, &rows, format)))
}

fn cmd_orbits(n: usize, q: u64, budget: &Budget, format: Format) -> Outcome<Output> {
    let ctx = field(q)?;
    if n == 0 {
        return Err(Error::DimensionMismatch("dimension must be at least 1".into()).into());
    }
    let orbits = enumerate_orbits(&ctx, n, budget)?;
    Ok(Output::ok(render::orbits(n, q, &orbits, format)))
}

fn run(cli: Cli) -> Outcome<Output> {
    if let Some(t) = cli.global.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(Failure::input)?;
    }
    let budget = Budget::with_enumeration(cli.global.budget);
    let format = cli.global.format;
    match &cli.command {
        Command::Count { n, field, method } => cmd_count(*n, field_order(field)?, *method, &budget, format),
        Command::Validate { n_min, n_max, q } => validate::run(*n_min, *n_max, q, &budget, format),
        Command::Table { n, q, method } => cmd_table(*n, q, method, &budget, format),
        Command::Orbits { n, field } => cmd_orbits(*n, field_order(field)?, &budget, format),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> io::Result<()> {
    match out {
        Some(path) => File::create(path)?.write_all(text.as_bytes()),
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let out = cli.global.out.clone();
    let Output { text, code } = match run(cli) {
        Ok(output) => output,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            return ExitCode::from(code);
        }
    };
    if let Err(e) = emit(&text, out.as_ref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_INPUT);
    }
    ExitCode::from(code)
}
