//! Command implementations behind the `kbonacci` binary.
//!
//! [`run`] parses arguments and returns the exit code together with
//! everything that would be written to stdout and stderr, so the commands
//! can be driven in-process.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kbonacci_core::exact::{iterate_forward, named_spec};
use kbonacci_core::methods::{sequence_methods, MethodContext};
use kbonacci_core::registry::Named;
use kbonacci_core::spectral::{
    all_roots, binet_eval, root_figure_data, root_finders, secondary_arg_fit, sj_coefficients, sj_equivalence_check,
    BinetCoefficients, FigureRow, PolishMode,
};
use kbonacci_core::verify::{verify_suites, SuiteReport, VerifyParams};
use kbonacci_core::{Error, HpReal, NamedSequence, Precision, RecurrenceSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Largest order accepted by `roots`.
pub const ROOTS_MAX_K: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "kbonacci", version, about = "k-generalized Fibonacci numbers and related linear recurrences")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a window of a recurrence.
    Seq(SeqArgs),
    /// Roots of x^k - x^(k-1) - ... - 1 with figure data.
    Roots(RootsArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Geometric initial values (1, mu, mu^2, ...): coefficients and sequence.
    Sj(SjArgs),
    /// List the registered methods, root finders and suites.
    List,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct PrecisionArg {
    /// Working precision in decimal digits.
    #[arg(long, default_value_t = Precision::DEFAULT_DIGITS)]
    pub precision: u32,
}

#[derive(Args, Debug)]
pub struct SeqArgs {
    /// kfib, narayana, padovan, perrin or sj-powers.
    #[arg(long)]
    pub named: Option<String>,
    #[arg(short)]
    pub k: Option<usize>,
    /// Ratio for sj-powers (integer).
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<BigInt>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub beta: Option<Vec<BigInt>>,
    /// Defaults to (0, ..., 0, 1).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub gamma: Option<Vec<BigInt>>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: i64,
    #[arg(long, default_value = "iterate")]
    pub method: String,
    #[arg(long, default_value = "auto")]
    pub polish: PolishMode,
    #[command(flatten)]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[arg(short)]
    pub k: usize,
    #[arg(long, default_value = "series")]
    pub solver: String,
    #[arg(long, default_value = "auto")]
    pub polish: PolishMode,
    #[command(flatten)]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// A suite name, or `all`.
    pub suite: String,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub n_max: Option<i64>,
    #[command(flatten)]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SjArgs {
    #[arg(short)]
    pub k: usize,
    /// Integer or rational, e.g. 2 or -3/4.
    #[arg(long, allow_hyphen_values = true, default_value = "2")]
    pub mu: BigRational,
    /// Last index, counting from 1 as u_1 = 1, u_2 = mu, ...
    #[arg(long, default_value_t = 10)]
    pub to: u32,
    #[arg(long, default_value = "auto")]
    pub polish: PolishMode,
    #[command(flatten)]
    pub precision: PrecisionArg,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

/// What a command wrote and how it exited.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: exit_code(e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        EXIT_NUMERIC
    } else {
        EXIT_USAGE
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(cmd: &Command) -> Outcome {
    let result = match cmd {
        Command::Seq(a) => seq(a),
        Command::Roots(a) => roots(a),
        Command::Verify(a) => verify(a),
        Command::Sj(a) => sj(a),
        Command::List => list(),
    };
    result.unwrap_or_else(|e| Outcome::error(&e))
}

fn precision(arg: PrecisionArg) -> Result<Precision, Error> {
    Precision::new(arg.precision)
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct Record<P, R> {
    command: &'static str,
    parameters: P,
    precision: String,
    #[serde(flatten)]
    result: R,
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

#[derive(Serialize)]
struct SeqParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    sequence: Option<String>,
    beta: Vec<String>,
    gamma: Vec<String>,
    from: String,
    to: String,
    method: String,
}

#[derive(Serialize)]
struct Point {
    n: String,
    value: String,
}

#[derive(Serialize)]
struct Values {
    values: Vec<Point>,
}

fn resolve_spec(a: &SeqArgs) -> Result<(Option<NamedSequence>, RecurrenceSpec), Error> {
    match (&a.named, &a.beta) {
        (Some(_), Some(_)) => Err(Error::InvalidSpec("give either --named or --beta, not both".into())),
        (Some(name), None) => {
            let tag = NamedSequence::parse(name, a.k, a.mu.clone())?;
            let spec = named_spec(&tag)?;
            let spec = match &a.gamma {
                Some(g) => spec.with_gamma(g.clone())?,
                None => spec,
            };
            Ok((Some(tag), spec))
        }
        (None, Some(beta)) => {
            if let Some(k) = a.k {
                if k != beta.len() {
                    return Err(Error::InvalidSpec(format!("-k {k} but {} coefficients", beta.len())));
                }
            }
            let gamma = a.gamma.clone().unwrap_or_else(|| {
                let mut g = vec![BigInt::from(0); beta.len()];
                if let Some(last) = g.last_mut() {
                    *last = BigInt::from(1);
                }
                g
            });
            Ok((None, RecurrenceSpec::new(beta.clone(), gamma)?))
        }
        (None, None) => match a.k {
            Some(k) => Ok((Some(NamedSequence::KFib(k)), named_spec(&NamedSequence::KFib(k))?)),
            None => Err(Error::InvalidSpec("give --named, --beta or -k".into())),
        },
    }
}

fn seq(a: &SeqArgs) -> Result<Outcome, Error> {
    let (tag, spec) = resolve_spec(a)?;
    let p = precision(a.precision)?;
    let methods = sequence_methods();
    let method = methods.get(&a.method)?;
    let ctx = MethodContext {
        precision: p,
        polish: a.polish,
    };
    let window = method.window(&spec, a.from, a.to, &ctx)?;
    let out = match a.format {
        Format::Csv => {
            let mut s = String::from("n,value\n");
            for (n, v) in window.iter() {
                writeln!(s, "{n},{v}").expect("string write");
            }
            s
        }
        Format::Json => to_json(&Record {
            command: "seq",
            parameters: SeqParams {
                sequence: tag.map(|t| t.to_string()),
                beta: strings(spec.beta()),
                gamma: strings(spec.gamma()),
                from: a.from.to_string(),
                to: a.to.to_string(),
                method: method.name().to_string(),
            },
            precision: p.digits().to_string(),
            result: Values {
                values: window
                    .iter()
                    .map(|(n, v)| Point {
                        n: n.to_string(),
                        value: v.to_string(),
                    })
                    .collect(),
            },
        }),
    };
    Ok(Outcome::ok(out))
}

#[derive(Serialize)]
struct RootsParams {
    k: String,
    solver: String,
    polish: String,
}

#[derive(Serialize)]
struct RootRow {
    #[serde(flatten)]
    row: FigureRow,
    kind: &'static str,
}

#[derive(Serialize)]
struct ArgFitOut {
    slope: String,
    intercept: String,
    max_deviation: String,
    monotone: bool,
}

#[derive(Serialize)]
struct RootsResult {
    roots: Vec<RootRow>,
    principal_bounds: bool,
    secondary_bounds: bool,
    max_residual: String,
    failed_properties: Vec<String>,
    arg_fit: ArgFitOut,
}

fn roots(a: &RootsArgs) -> Result<Outcome, Error> {
    if !(2..=ROOTS_MAX_K).contains(&a.k) {
        return Err(Error::InvalidRange(format!("roots needs 2 <= k <= {ROOTS_MAX_K}, got {}", a.k)));
    }
    let p = precision(a.precision)?;
    let finders = root_finders();
    let finder = finders.get(&a.solver)?;
    let rs = finder.root_set(a.k, p, a.polish)?;
    let inv = rs.invariants();
    let fit = secondary_arg_fit(&rs);
    let negative = rs.negative_real_index();
    let rows = root_figure_data(&rs);
    let diag = format!(
        "secondary arguments {}; max deviation from best-fit line {}\n",
        if fit.monotone { "strictly increasing" } else { "NOT monotone" },
        fit.max_deviation
    );
    let out = match a.format {
        Format::Csv => {
            let mut s = String::from("j,re,im,abs,arg_over_2pi,residual\n");
            for r in &rows {
                writeln!(s, "{},{},{},{},{},{}", r.j, r.re, r.im, r.abs, r.arg_over_2pi, r.residual).expect("string write");
            }
            s
        }
        Format::Json => to_json(&Record {
            command: "roots",
            parameters: RootsParams {
                k: a.k.to_string(),
                solver: finder.name().to_string(),
                polish: a.polish.to_string(),
            },
            precision: p.digits().to_string(),
            result: RootsResult {
                roots: rows
                    .into_iter()
                    .map(|row| {
                        let kind = match row.j {
                            0 => "principal",
                            j if Some(j) == negative => "negative-real",
                            _ => "complex",
                        };
                        RootRow { row, kind }
                    })
                    .collect(),
                principal_bounds: inv.principal_bounds,
                secondary_bounds: inv.secondary_bound_violations.is_empty(),
                max_residual: inv.max_residual_b.to_sci(6),
                failed_properties: inv.failures(a.k, p),
                arg_fit: ArgFitOut {
                    slope: fit.slope.to_string(),
                    intercept: fit.intercept.to_string(),
                    max_deviation: fit.max_deviation.to_string(),
                    monotone: fit.monotone,
                },
            },
        }),
    };
    Ok(Outcome {
        code: EXIT_OK,
        stdout: out,
        stderr: diag,
    })
}

#[derive(Serialize)]
struct VerifyParamsOut {
    suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    k_max: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_max: Option<String>,
}

#[derive(Serialize)]
struct VerifyResult {
    passed: bool,
    suites: Vec<SuiteReport>,
}

fn verify(a: &VerifyArgs) -> Result<Outcome, Error> {
    let p = precision(a.precision)?;
    let suites = verify_suites();
    let selected: Vec<_> = if a.suite == "all" {
        suites.iter().collect()
    } else {
        vec![suites.get(&a.suite)?]
    };
    let params = VerifyParams {
        k_max: a.k_max,
        n_max: a.n_max,
        precision: p,
    };
    let reports = selected.iter().map(|s| s.run(&params)).collect::<Result<Vec<_>, _>>()?;
    let passed = reports.iter().all(SuiteReport::passed);

    let mut stderr = String::new();
    if let Some((suite, c)) = reports.iter().find_map(|r| r.first_failure().map(|c| (r.suite, c))) {
        writeln!(
            stderr,
            "FAIL {suite}/{}: {}\n  counterexample: {}",
            c.name,
            c.identity,
            c.counterexample.as_deref().unwrap_or("none")
        )
        .expect("string write");
    }
    let out = match a.format {
        Format::Csv => {
            let mut s = String::from("suite,check,passed,checked,failures\n");
            for r in &reports {
                for c in &r.checks {
                    writeln!(s, "{},{},{},{},{}", r.suite, c.name, c.passed, c.checked, c.failures).expect("string write");
                }
            }
            s
        }
        Format::Json => to_json(&Record {
            command: "verify",
            parameters: VerifyParamsOut {
                suite: a.suite.clone(),
                k_max: a.k_max.map(|k| k.to_string()),
                n_max: a.n_max.map(|n| n.to_string()),
            },
            precision: p.digits().to_string(),
            result: VerifyResult {
                passed,
                suites: reports,
            },
        }),
    };
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
        stdout: out,
        stderr,
    })
}

#[derive(Serialize)]
struct SjParams {
    k: String,
    mu: String,
    to: String,
}

#[derive(Serialize)]
struct Coefficient {
    j: String,
    re: String,
    im: String,
}

#[derive(Serialize)]
struct Equivalence {
    holds: bool,
    max_deviation: String,
}

#[derive(Serialize)]
struct SjResult {
    coefficients: Vec<Coefficient>,
    values: Vec<Point>,
    matches_exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_mismatch: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    equivalence: Option<Equivalence>,
}

/// `u_1, …, u_to` with `u_{n+1} = w_n` and `w = (1, μ, …, μ^{k-1}, …)`.
///
/// For `μ = p/q` the sum is scaled by `q^{k-1}`, which makes every term an integer.
fn sj(a: &SjArgs) -> Result<Outcome, Error> {
    let k = a.k;
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let mut p = precision(a.precision)?;
    let mu = &a.mu;
    let q = mu.denom().clone();
    let scale = q.pow(k as u32 - 1);
    let gamma: Vec<BigInt> = (0..k as u32).map(|i| mu.numer().pow(i) * q.pow(k as u32 - 1 - i)).collect();
    let spec = RecurrenceSpec::new(vec![BigInt::from(1); k], gamma)?;
    let top = a.to as i64 - 1;
    let exact = iterate_forward(&spec, top.max(k as i64))?;

    let (rs, coeffs, scaled) = loop {
        let rs = all_roots(k, p, a.polish)?;
        let coeffs = sj_coefficients(&rs, mu)?;
        let factor = HpReal::from_bigint(&scale, rs.bits());
        let scaled_coeffs = BinetCoefficients {
            coeffs: coeffs.coeffs.iter().map(|c| c.scale(&factor)).collect(),
            provenance: coeffs.provenance.clone(),
        };
        match (0..=top).map(|n| binet_eval(&rs, &scaled_coeffs, n)).collect::<Result<Vec<_>, _>>() {
            Ok(v) => break (rs, coeffs, v),
            Err(e @ Error::PrecisionExhausted { .. }) => match p.escalated() {
                Some(next) => p = next,
                None => return Err(e),
            },
            Err(e) => return Err(e),
        }
    };

    let first_mismatch = scaled
        .iter()
        .enumerate()
        .find(|(n, v)| exact.get(*n as i64) != Some(*v))
        .map(|(n, v)| format!("u_{}: sum gives {}, recurrence gives {}", n + 1, BigRational::new(v.clone(), scale.clone()), BigRational::new(exact.get(n as i64).cloned().unwrap_or_default(), scale.clone())));
    let values: Vec<Point> = scaled
        .iter()
        .enumerate()
        .map(|(n, v)| Point {
            n: (n + 1).to_string(),
            value: BigRational::new(v.clone(), scale.clone()).to_string(),
        })
        .collect();
    let equivalence = if *mu == BigRational::from_integer(BigInt::from(2)) {
        let e = sj_equivalence_check(&rs)?;
        Some(Equivalence {
            holds: e.holds,
            max_deviation: e.max_deviation.to_sci(6),
        })
    } else {
        None
    };
    let passed = first_mismatch.is_none() && equivalence.as_ref().is_none_or(|e| e.holds);
    let digits = p.digits() as usize;
    let out = match a.format {
        Format::Csv => {
            let mut s = String::from("n,value\n");
            for pt in &values {
                writeln!(s, "{},{}", pt.n, pt.value).expect("string write");
            }
            s
        }
        Format::Json => to_json(&Record {
            command: "sj",
            parameters: SjParams {
                k: k.to_string(),
                mu: mu.to_string(),
                to: a.to.to_string(),
            },
            precision: p.digits().to_string(),
            result: SjResult {
                coefficients: coeffs
                    .coeffs
                    .iter()
                    .enumerate()
                    .map(|(j, c)| Coefficient {
                        j: j.to_string(),
                        re: c.re.to_fixed(digits),
                        im: c.im.to_fixed(digits),
                    })
                    .collect(),
                values,
                matches_exact: first_mismatch.is_none(),
                first_mismatch: first_mismatch.clone(),
                equivalence,
            },
        }),
    };
    let mut stderr = String::new();
    if let Some(m) = &first_mismatch {
        writeln!(stderr, "FAIL {m}").expect("string write");
    }
    Ok(Outcome {
        code: if passed { EXIT_OK } else { EXIT_VERIFY },
        stdout: out,
        stderr,
    })
}

#[derive(Serialize)]
struct Entry {
    name: &'static str,
    summary: &'static str,
}

#[derive(Serialize)]
struct Listing {
    command: &'static str,
    methods: Vec<Entry>,
    solvers: Vec<Entry>,
    suites: Vec<Entry>,
}

fn entries<'a, T: Named + ?Sized + 'a>(it: impl Iterator<Item = &'a T>) -> Vec<Entry> {
    it.map(|x| Entry {
        name: x.name(),
        summary: x.summary(),
    })
    .collect()
}

fn list() -> Result<Outcome, Error> {
    Ok(Outcome::ok(to_json(&Listing {
        command: "list",
        methods: entries(sequence_methods().iter()),
        solvers: entries(root_finders().iter()),
        suites: entries(verify_suites().iter()),
    })))
}
