use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use higgs_count::curve::CurveModel;
use higgs_count::invariants::{invariant_table, Divisor, Kind};
use higgs_count::oracle::DEFAULT_CAP;
use higgs_count::verify::{
    conjecture_suite, identities_suite, oracle_suite, parse_coeffs, Check, VerifyConfig,
};
use higgs_count::Error;

#[derive(Parser)]
#[command(
    name = "higgs",
    version,
    about = "Twisted Higgs bundle counts over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute one invariant table and export it.
    Compute(ComputeArgs),
    /// Run verification suites; exits 3 if any check fails.
    Verify(VerifyArgs),
}

#[derive(Args, Clone)]
struct CurveArgs {
    #[arg(long, default_value_t = 0)]
    genus: usize,
    /// Zeta numerator coefficients c_0,...,c_2g (numeric mode).
    #[arg(long)]
    coeffs: Option<String>,
    /// Field size q0 (numeric mode).
    #[arg(long)]
    q: Option<u64>,
    /// Degree l of the divisor D.
    #[arg(long, allow_negative_numbers = true)]
    deg: Option<i64>,
    /// D is the canonical divisor (forces l = 2g-2).
    #[arg(long, num_args = 0..=1, default_missing_value = "true", default_value = "false")]
    canonical: bool,
    #[arg(long, default_value_t = 2)]
    rmax: u32,
    #[arg(long, default_value_t = 4)]
    dmax: u32,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, default_value = "omega")]
    kind: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file (default: stdout).
    #[arg(long)]
    output: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Suite {
    Oracle,
    Identities,
    Conjecture,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    curve: CurveArgs,
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Cap on enumerated Higgs fields per bundle.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) | Error::EnumerationCap { .. } => 2,
            _ => 1,
        };
        Failure(code, e.to_string())
    }
}

fn config_error(msg: impl Into<String>) -> Failure {
    Failure(1, msg.into())
}

impl CurveArgs {
    fn divisor(&self, default_deg: Option<i64>) -> Result<Divisor, Failure> {
        let k = 2 * self.genus as i64 - 2;
        match (self.canonical, self.deg.or(default_deg)) {
            (true, Some(l)) if l != k => Err(config_error(format!(
                "--canonical forces deg = {k}, got {l}"
            ))),
            (true, _) => Ok(Divisor::canonical(self.genus)),
            (false, Some(l)) => Ok(Divisor::of_degree(l)),
            (false, None) => Err(config_error(
                "--deg is required unless --canonical is given",
            )),
        }
    }

    fn curve(&self) -> Result<CurveModel, Failure> {
        let coeffs = match (&self.coeffs, self.q) {
            (None, None) => return Ok(CurveModel::symbolic(self.genus)?),
            (Some(c), Some(_)) => parse_coeffs(c)?,
            (None, Some(_)) if self.genus == 0 => parse_coeffs("1")?,
            _ => return Err(config_error("numeric mode needs both --q and --coeffs")),
        };
        Ok(CurveModel::numeric(
            self.genus,
            self.q.expect("checked"),
            coeffs,
        )?)
    }

    fn init_threads(&self) -> Result<(), Failure> {
        if let Some(n) = self.threads {
            if n == 0 {
                return Err(config_error("--threads must be positive"));
            }
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| config_error(e.to_string()))?;
        }
        Ok(())
    }
}

fn compute(args: &ComputeArgs) -> Result<(), Failure> {
    args.curve.init_threads()?;
    let kind: Kind = args
        .kind
        .parse()
        .map_err(|e: Error| config_error(e.to_string()))?;
    let curve = args.curve.curve()?;
    let div = args.curve.divisor(None)?;
    let symbolic = CurveModel::symbolic(curve.genus())?;
    let mut table = invariant_table(kind, div, &symbolic, args.curve.rmax, args.curve.dmax)?;
    if let Some(e) = curve.e_values() {
        for entry in table.entries.values_mut() {
            entry.value = entry.value.substitute_e(&e)?;
        }
    }
    let text = match args.format {
        Format::Json => table.to_json() + "\n",
        Format::Csv => table.to_csv(),
    };
    match &args.output {
        Some(path) => {
            std::fs::write(path, text).map_err(|e| config_error(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn report(title: &str, checks: &[Check]) -> bool {
    println!("== {title}");
    for c in checks {
        if c.passed {
            println!("PASS {}", c.name);
        } else {
            println!("FAIL {}: {}", c.name, c.detail);
        }
    }
    checks.iter().all(|c| c.passed)
}

fn verify(args: &VerifyArgs) -> Result<bool, Failure> {
    let a = &args.curve;
    a.init_threads()?;
    let mut cfg = VerifyConfig {
        genus: a.genus,
        q0: a.q.unwrap_or(2),
        div: Divisor::of_degree(0),
        rmax: a.rmax,
        dmax: a.dmax,
        cap: args.cap,
        seed: args.seed,
    };
    let mut ok = true;
    if matches!(args.suite, Suite::Oracle | Suite::All) {
        let div = CurveArgs {
            genus: 0,
            ..a.clone()
        }
        .divisor((!a.canonical).then_some(0))?;
        if a.genus != 0 {
            println!("note: the oracle suite runs at genus 0");
        }
        let c = VerifyConfig {
            genus: 0,
            div,
            ..cfg.clone()
        };
        ok &= report("oracle", &oracle_suite(&c)?);
    }
    if matches!(args.suite, Suite::Identities | Suite::All) {
        ok &= report("identities", &identities_suite(&cfg)?);
    }
    if matches!(args.suite, Suite::Conjecture | Suite::All) {
        cfg.div = a.divisor((!a.canonical).then_some(2 * a.genus as i64 - 1))?;
        ok &= report("conjecture", &conjecture_suite(&cfg)?);
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match &cli.cmd {
        Cmd::Compute(a) => compute(a).map(|_| true),
        Cmd::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
