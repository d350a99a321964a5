mod fixtures;
mod input;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use loewner_lab::constants::{big_k, grid_constant, small_k, Extremum, RatioConstant};
use loewner_lab::explorer::{
    hunt_violations, probe_hypothesis_satisfiability, Checker, GeneratorSpec, HuntResult,
};
use loewner_lab::report::ScalarReport;
use loewner_lab::suite::{auto_sandwich_bounds, joint_bounds, EllMode};
use loewner_lab::{
    spectral, Error, Family, InequalityReport, Interval, Relation, ScalarFunction, Suite, SymMatrix,
};
use serde::{Deserialize, Serialize};

use input::{parse_function, pick, require, Input};

/// Points of the dense grid the constants are compared against.
pub const ORACLE_POINTS: usize = 1 << 17;

#[derive(Debug)]
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_numeric_failure() { 5 } else { 4 },
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "loewner-lab",
    version,
    about = "Numerical checks for Loewner-order operator inequalities"
)]
struct Cli {
    /// JSON problem file: {"A": [[..]], "B": [[..]], "f": {"family": ..}, "v": .., ...}
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Relative tolerance of the Loewner comparisons (fixture tolerance for the `paper` command)
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true, env = "LOEWNER_LAB_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    output_format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check one inequality on the matrices from --input
    Check(CheckArgs),
    /// Ratio constants K(m, M, f) and k(m, M, f)
    Constants {
        #[arg(long)]
        m: Option<f64>,
        #[arg(long = "M")]
        big_m: Option<f64>,
        #[arg(long)]
        f: Option<String>,
    },
    /// Hermite–Hadamard chain with the integral mean
    Hh {
        #[arg(long)]
        f: Option<String>,
        /// Gauss–Legendre panels of 16 nodes each
        #[arg(long, default_value_t = loewner_lab::means::DEFAULT_PANELS)]
        nodes: usize,
    },
    /// Seeded counterexample search
    Hunt {
        #[arg(long)]
        theorem: String,
        #[arg(long)]
        f: Option<String>,
        /// Exponent for the power checker when --f is absent
        #[arg(long)]
        r: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        /// Spectrum interval `lo,hi`
        #[arg(long, default_value = "0.1,10")]
        interval: String,
        /// Only test hypothesis-conforming instances
        #[arg(long)]
        require_hypothesis: bool,
    },
    /// Count random interval tuples satisfying a hypothesis
    Probe {
        #[arg(long)]
        condition: String,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
    },
    /// Reproduce the worked examples
    Paper,
}

#[derive(Debug, clap::Args)]
struct CheckArgs {
    #[arg(long)]
    theorem: String,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    v: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long = "M")]
    big_m: Option<f64>,
    /// Number of operators for ell_sum (A repeated when --input gives no list)
    #[arg(long)]
    ell: Option<usize>,
    /// concave_lower or decreasing_upper
    #[arg(long)]
    mode: Option<EllMode>,
    #[arg(long)]
    nodes: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantsOutput {
    pub function: String,
    pub big_k: RatioConstant,
    pub small_k: RatioConstant,
    pub big_k_grid_delta: f64,
    pub small_k_grid_delta: f64,
    pub oracle_points: usize,
}

enum Output {
    Inequality(InequalityReport),
    Scalar(ScalarReport),
    Constants(ConstantsOutput),
    Hunt(HuntResult),
    Fixtures(Vec<fixtures::Fixture>),
}

/// Both sides coincide everywhere, so the spectral hypothesis is moot.
pub fn identity(r: &InequalityReport) -> bool {
    r.verdict.relation == Relation::Equal
        && r.chain_links
            .iter()
            .all(|l| l.verdict.relation == Relation::Equal)
}

impl Output {
    fn exit_code(&self) -> u8 {
        match self {
            Output::Inequality(r) => match (r.holds(), r.hypothesis_holds()) {
                (false, _) => 2,
                _ if identity(r) => 0,
                (true, Some(false)) => 3,
                (true, _) => 0,
            },
            Output::Scalar(r) => {
                if r.holds() {
                    0
                } else {
                    2
                }
            }
            Output::Constants(_) => 0,
            Output::Hunt(r) => {
                if r.violations.is_empty() {
                    0
                } else {
                    2
                }
            }
            Output::Fixtures(list) => {
                if list.iter().all(|f| f.passed) {
                    0
                } else {
                    2
                }
            }
        }
    }

    fn render(&self, format: Format) -> String {
        fn json<T: Serialize>(value: &T) -> String {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        match (self, format) {
            (Output::Inequality(r), Format::Json) => json(r),
            (Output::Scalar(r), Format::Json) => json(r),
            (Output::Constants(c), Format::Json) => json(c),
            (Output::Hunt(h), Format::Json) => json(h),
            (Output::Fixtures(f), Format::Json) => json(f),
            (Output::Inequality(r), Format::Table) => table::inequality(r),
            (Output::Scalar(r), Format::Table) => table::scalar(r),
            (Output::Constants(c), Format::Table) => table::constants(c),
            (Output::Hunt(h), Format::Table) => table::hunt(h),
            (Output::Fixtures(f), Format::Table) => table::fixtures(f),
        }
    }
}

fn suite(tolerance: Option<f64>) -> Result<Suite, Failure> {
    match tolerance {
        None => Ok(Suite::default()),
        Some(t) if t > 0.0 && t.is_finite() => Ok(Suite::with_tolerance(t)),
        Some(t) => Err(Failure::input(format!(
            "--tolerance must be positive, got {t}"
        ))),
    }
}

fn function(flag: Option<&str>, input: &Input) -> Result<ScalarFunction, Failure> {
    match flag {
        Some(spec) => parse_function(spec),
        None => require(input.f.clone(), "f"),
    }
}

fn operands(input: &Input) -> Result<(SymMatrix, SymMatrix), Failure> {
    Ok((
        require(input.a.clone(), "A")?,
        require(input.b.clone(), "B")?,
    ))
}

/// `(m, M)` from flags or input, else the tightest bounds the theorem admits.
fn bounds(
    args: &CheckArgs,
    input: &Input,
    auto: impl FnOnce() -> loewner_lab::Result<(f64, f64)>,
) -> Result<(f64, f64), Failure> {
    match (pick(args.m, input.m), pick(args.big_m, input.big_m)) {
        (Some(m), Some(big_m)) => Ok((m, big_m)),
        (None, None) => Ok(auto()?),
        _ => Err(Failure::input("give both `m` and `M` or neither")),
    }
}

fn cmd_check(args: &CheckArgs, input: &Input, suite: Suite) -> Result<Output, Failure> {
    let suite = Suite {
        panels: args.nodes.unwrap_or(suite.panels),
        ..suite
    };
    let id = args.theorem.trim();
    let id = id.strip_prefix("check_").unwrap_or(id).to_ascii_lowercase();
    let f = || function(args.f.as_deref(), input);
    let v = || require(pick(args.v, input.v), "v");
    let overrides = match (input.nn, input.mm) {
        (Some(nn), Some(mm)) => Some((nn, mm)),
        (None, None) => None,
        _ => return Err(Failure::input("give both `nN` and `mM` or neither")),
    };
    let report = match id.as_str() {
        "thm1" => {
            let (a, b) = operands(input)?;
            suite.check_thm1(&f()?, &a, &b, v()?, overrides)?
        }
        "thm2" => {
            let (a, b) = operands(input)?;
            suite.check_thm2(&f()?, &a, &b, v()?, overrides)?
        }
        "subadditivity_double" => {
            let (a, b) = operands(input)?;
            suite.check_subadditivity_double(&f()?, &a, &b)?
        }
        "power" => {
            let (a, b) = operands(input)?;
            let r = match pick(args.r, input.r) {
                Some(r) => r,
                None => match f()?.family() {
                    Family::Power { r } => r,
                    other => {
                        return Err(Failure::input(format!(
                            "power needs `r` or a power function, got {other:?}"
                        )))
                    }
                },
            };
            suite.check_power(r, &a, &b)?
        }
        "hh_chain" | "hh" => {
            let (a, b) = operands(input)?;
            suite.check_hh_chain(&f()?, &a, &b)?
        }
        "decreasing_chain" => {
            let (a, b) = operands(input)?;
            suite.check_decreasing_chain(&f()?, &a, &b)?
        }
        "reverse_subadditivity" | "concave_lower" => {
            let (a, b) = operands(input)?;
            let (m, big_m) = bounds(args, input, || auto_sandwich_bounds(&a, &b))?;
            if id == "concave_lower" {
                suite.check_concave_lower(&f()?, &a, &b, m, big_m)?
            } else {
                suite.check_reverse_subadditivity(&f()?, &a, &b, m, big_m)?
            }
        }
        "k_k_subadditivity" => {
            let (a, b) = operands(input)?;
            let (m, big_m) = bounds(args, input, || joint_bounds(&a, &b).map(|i| (i.lo, i.hi)))?;
            suite.check_k_k_subadditivity(&f()?, &a, &b, m, big_m)?
        }
        "ell_sum" => {
            let operators = match (&input.operators, args.ell) {
                (Some(ops), _) => ops.clone(),
                (None, Some(ell)) => vec![require(input.a.clone(), "A")?; ell],
                (None, None) => {
                    let (a, b) = operands(input)?;
                    vec![a, b]
                }
            };
            let mode = require(pick(args.mode, input.mode), "mode")?;
            let (m, big_m) = bounds(args, input, || {
                let mut hull = spectral::spectral_interval(&operators[0])?;
                for op in &operators[1..] {
                    hull = hull.hull(&spectral::spectral_interval(op)?);
                }
                let ell = operators.len() as f64;
                Ok((ell * hull.lo, ell * hull.hi))
            })?;
            suite.check_ell_sum(&f()?, &operators, m, big_m, mode)?
        }
        "inner_jensen" => {
            let a = require(input.a.clone(), "A")?;
            let x = require(input.x.clone(), "x")?;
            let (m, big_m) = bounds(args, input, || {
                spectral::spectral_interval(&a).map(|i| (i.lo, i.hi))
            })?;
            return Ok(Output::Scalar(suite.check_inner_jensen(
                &f()?,
                &a,
                &x,
                m,
                big_m,
            )?));
        }
        other => return Err(Failure::input(format!("unknown theorem `{other}`"))),
    };
    Ok(Output::Inequality(report))
}

fn cmd_constants(
    m: Option<f64>,
    big_m: Option<f64>,
    f: Option<&str>,
    input: &Input,
) -> Result<Output, Failure> {
    let f = function(f, input)?;
    let m = require(pick(m, input.m), "m")?;
    let big_m = require(pick(big_m, input.big_m), "M")?;
    let big = big_k(m, big_m, &f)?;
    let small = small_k(m, big_m, &f)?;
    let (grid_big, _) = grid_constant(&f, m, big_m, ORACLE_POINTS, Extremum::Max)?;
    let (grid_small, _) = grid_constant(&f, m, big_m, ORACLE_POINTS, Extremum::Min)?;
    Ok(Output::Constants(ConstantsOutput {
        function: f.spec_json(),
        big_k_grid_delta: (big.value - grid_big).abs(),
        small_k_grid_delta: (small.value - grid_small).abs(),
        big_k: big,
        small_k: small,
        oracle_points: ORACLE_POINTS,
    }))
}

fn parse_interval(text: &str) -> Result<Interval, Failure> {
    let bad = || Failure::input(format!("invalid --interval `{text}`, expected `lo,hi`"));
    let (lo, hi) = text.split_once(',').ok_or_else(bad)?;
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(Interval::new(lo, hi)?)
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let input = Input::load(cli.input.as_deref())?;
    let suite = suite(cli.tolerance)?;
    match &cli.command {
        Command::Check(args) => cmd_check(args, &input, suite),
        Command::Constants { m, big_m, f } => cmd_constants(*m, *big_m, f.as_deref(), &input),
        Command::Hh { f, nodes } => {
            if *nodes == 0 {
                return Err(Failure::input("--nodes must be positive"));
            }
            let suite = Suite {
                panels: *nodes,
                ..suite
            };
            let (a, b) = operands(&input)?;
            Ok(Output::Inequality(suite.check_hh_chain(
                &function(f.as_deref(), &input)?,
                &a,
                &b,
            )?))
        }
        Command::Hunt {
            theorem,
            f,
            r,
            trials,
            dim,
            interval,
            require_hypothesis,
        } => {
            let checker: Checker = theorem.parse()?;
            let f = match (f, r) {
                (Some(spec), _) => parse_function(spec)?,
                (None, Some(r)) => ScalarFunction::power(*r),
                (None, None) => require(input.f.clone(), "f")?,
            };
            let spec = GeneratorSpec::new(*dim, parse_interval(interval)?, cli.seed, *trials)?;
            Ok(Output::Hunt(hunt_violations(
                checker,
                &f,
                &spec,
                *require_hypothesis,
                &suite,
            )?))
        }
        Command::Probe { condition, trials } => Ok(Output::Hunt(probe_hypothesis_satisfiability(
            condition, *trials, cli.seed,
        )?)),
        Command::Paper => {
            let tolerance = match cli.tolerance {
                Some(t) => t,
                None => fixtures::DEFAULT_FIXTURE_TOLERANCE,
            };
            Ok(Output::Fixtures(fixtures::run(
                tolerance,
                &Suite::default(),
            )?))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(output) => {
            print!("{}", output.render(cli.output_format));
            ExitCode::from(output.exit_code())
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_failures_exit_5() {
        let e = Error::QuadratureNotConverged {
            delta: 1e-3,
            limit: 1e-8,
        };
        assert_eq!(Failure::from(e).code, 5);
        let e = Error::NonConvergence {
            sweeps: 64,
            off_norm: 1.0,
        };
        assert_eq!(Failure::from(e).code, 5);
        assert_eq!(Failure::from(Error::UnknownChecker("x".into())).code, 4);
    }
}
