//! Command-line front end: element I/O as JSON breakpoint lists, the group
//! operations, invariants and realizers, the verification suites, and CSV
//! sampling. Elements flow through stdin/stdout when file arguments are
//! omitted, so the verbs compose into shell pipelines.

use std::fs;
use std::io::{self, Read as _, Write as _};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use plhomeo::exactnum::{parse_rational, Rational};
use plhomeo::harness::{run, Suite, SuiteConfig};
use plhomeo::pagroup::{alpha_a, beta_a, gamma_a, realize_beta_a, realize_gamma_a, PaContext};
use plhomeo::pgroup::{member_pq, realize_info};
use plhomeo::plmap::PLHomeo;
use plhomeo::thompson::{alpha, beta, gamma, realize_beta, realize_gamma, GroupKind};

#[derive(Parser)]
#[command(name = "plhomeo", about = "Exact PL homeomorphisms of [0,1]: F, P^a, P^Q and P")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compose two elements: prints f o g.
    Compose { f: Option<PathBuf>, g: Option<PathBuf> },
    /// Invert an element.
    Invert { f: Option<PathBuf> },
    /// Conjugate h by g: prints h^g = g o h o g^-1.
    Conjugate { h: Option<PathBuf>, g: Option<PathBuf> },
    /// Evaluate an element at an exact rational point.
    Eval {
        f: Option<PathBuf>,
        #[arg(long)]
        at: String,
    },
    /// Compute a class invariant: alpha, beta or gamma.
    Invariant {
        kind: String,
        f: Option<PathBuf>,
        #[arg(long, default_value = "F")]
        mode: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Realize an element from an invariant value: beta, gamma or info.
    Construct {
        what: String,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long, default_value = "F")]
        mode: String,
        #[arg(long)]
        base: Option<String>,
    },
    /// Run the randomized property suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        cases: u32,
        /// Mutation check: run conjugations with the reversed convention.
        #[arg(long)]
        reversed_conjugation: bool,
        #[arg(long)]
        json: bool,
    },
    /// Sample an element to CSV rows (x, f(x)) in decimal and exact form.
    Sample {
        f: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        points: u32,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        precision: u32,
    },
    /// Check membership of an element in F, Pa, PQ or P.
    CheckMember {
        f: Option<PathBuf>,
        #[arg(long, default_value = "F")]
        mode: String,
        #[arg(long)]
        base: Option<String>,
    },
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    breakpoints: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    basepoint: Option<String>,
}

struct CliError {
    code: &'static str,
    msg: String,
    exit: u8,
}

impl CliError {
    fn new(code: &'static str, msg: impl Into<String>, exit: u8) -> Self {
        CliError { code, msg: msg.into(), exit }
    }

    fn domain(msg: impl Into<String>) -> Self {
        CliError::new("E_DOMAIN", msg, 1)
    }

    fn parse(msg: impl Into<String>) -> Self {
        CliError::new("E_PARSE", msg, 1)
    }
}

impl From<plhomeo::Error> for CliError {
    fn from(e: plhomeo::Error) -> Self {
        match e {
            plhomeo::Error::BadBreakpoint { .. } => CliError::new("E_CANON", e.to_string(), 1),
            plhomeo::Error::Postcondition(_) => CliError::new("E_VERIFY", e.to_string(), 2),
            _ => CliError::new("E_DOMAIN", e.to_string(), 1),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::new("E_IO", e.to_string(), 1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error[{}]: {}", e.code, e.msg);
            ExitCode::from(e.exit)
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<ExitCode, CliError> {
    match cmd {
        Cmd::Compose { f, g } => {
            let [f, g] = load2(&f, &g)?;
            emit_element(&f.compose(&g), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Invert { f } => {
            let f = load1(&f)?;
            emit_element(&f.invert(), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Conjugate { h, g } => {
            let [h, g] = load2(&h, &g)?;
            emit_element(&h.conjugate(&g), None)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Eval { f, at } => {
            let f = load1(&f)?;
            let x = rational_arg(&at)?;
            println!("{}", f.evaluate(&x)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Invariant { kind, f, mode, base } => cmd_invariant(&kind, &f, &mode, base.as_deref()),
        Cmd::Construct { what, k, xi, target, mode, base } => {
            cmd_construct(&what, k, xi.as_deref(), &target, &mode, base.as_deref())
        }
        Cmd::Verify { suite, seed, cases, reversed_conjugation, json } => {
            cmd_verify(&suite, seed, cases, reversed_conjugation, json)
        }
        Cmd::Sample { f, points, csv, precision } => cmd_sample(&f, points, &csv, precision),
        Cmd::CheckMember { f, mode, base } => {
            let f = load1(&f)?;
            let kind = parse_mode(&mode, base.as_deref())?;
            if kind.member(&f) {
                println!("true");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("false");
                Ok(ExitCode::from(2))
            }
        }
    }
}

fn cmd_invariant(
    kind: &str,
    f: &Option<PathBuf>,
    mode: &str,
    base: Option<&str>,
) -> Result<ExitCode, CliError> {
    let f = load1(f)?;
    match (kind, parse_mode(mode, base)?) {
        ("alpha", GroupKind::F) => println!("{}", alpha(&f)?),
        ("beta", GroupKind::F) => println!("{}", beta(&f)?),
        ("gamma", GroupKind::F) => emit_element(&gamma(&f)?, None)?,
        ("alpha", GroupKind::Pa(a)) => println!("{}", alpha_a(&PaContext::new(a)?, &f)?),
        ("beta", GroupKind::Pa(a)) => println!("{}", beta_a(&PaContext::new(a)?, &f)?),
        ("gamma", GroupKind::Pa(a)) => emit_element(&gamma_a(&PaContext::new(a)?, &f)?, None)?,
        ("alpha" | "beta" | "gamma", _) => {
            return Err(CliError::domain("invariant requires --mode F or --mode Pa"))
        }
        (other, _) => {
            return Err(CliError::domain(format!(
                "unknown invariant {other:?} (expected alpha, beta or gamma)"
            )))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_construct(
    what: &str,
    k: Option<u64>,
    xi: Option<&str>,
    target: &Option<PathBuf>,
    mode: &str,
    base: Option<&str>,
) -> Result<ExitCode, CliError> {
    let kind = parse_mode(mode, base)?;
    match (what, kind) {
        ("beta", GroupKind::F) => {
            let k = k.ok_or_else(|| CliError::domain("construct beta needs --k in mode F"))?;
            emit_element(&realize_beta(k)?, None)?;
        }
        ("beta", GroupKind::Pa(a)) => {
            let xi =
                xi.ok_or_else(|| CliError::domain("construct beta needs --xi in mode Pa"))?;
            let xi = rational_arg(xi)?;
            emit_element(&realize_beta_a(&PaContext::new(a)?, &xi)?, None)?;
        }
        ("gamma", GroupKind::F) => {
            let t = load_target(target)?;
            emit_element(&realize_gamma(&t)?, None)?;
        }
        ("gamma", GroupKind::Pa(a)) => {
            let t = load_target(target)?;
            emit_element(&realize_gamma_a(&PaContext::new(a)?, &t)?, None)?;
        }
        ("info", GroupKind::P | GroupKind::PQ) => {
            let t = load_target(target)?;
            let (g, basepoint) = realize_info(&t)?;
            if !member_pq(&g) {
                return Err(CliError::new("E_VERIFY", "realized element left P^Q", 2));
            }
            emit_element(&g, Some(&basepoint))?;
        }
        ("info", _) => {
            return Err(CliError::domain("construct info requires --mode P or --mode PQ"))
        }
        ("beta" | "gamma", _) => {
            return Err(CliError::domain(format!(
                "construct {what} requires --mode F or --mode Pa"
            )))
        }
        (other, _) => {
            return Err(CliError::domain(format!(
                "unknown construction {other:?} (expected beta, gamma or info)"
            )))
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    cases: u32,
    reversed: bool,
    json: bool,
) -> Result<ExitCode, CliError> {
    if cases == 0 {
        return Err(CliError::domain("--cases must be at least 1"));
    }
    let suites: Vec<Suite> = if suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![suite.parse().map_err(CliError::domain)?]
    };
    let cfg = SuiteConfig { seed, cases, reversed_conjugation: reversed };
    let mut reports = Vec::new();
    for s in suites {
        let t0 = Instant::now();
        let mut rep = run(s, &cfg);
        rep.elapsed_ms = t0.elapsed().as_millis() as u64;
        if !json {
            println!("{rep} in {} ms", rep.elapsed_ms);
        }
        reports.push(rep);
    }
    if json {
        let value: Vec<_> = reports
            .iter()
            .map(|r| {
                serde_json::json!({
                    "suite": r.suite,
                    "seed": r.seed,
                    "cases": r.cases,
                    "failures": r.failures,
                    "first_counterexample": r.first_counterexample,
                    "elapsed_ms": r.elapsed_ms,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&value).expect("report serialization"));
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        return Err(CliError::new("E_VERIFY", format!("{failed} suite(s) failed"), 2));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sample(
    f: &Option<PathBuf>,
    points: u32,
    csv: &Option<PathBuf>,
    precision: u32,
) -> Result<ExitCode, CliError> {
    if points == 0 {
        return Err(CliError::domain("--points must be at least 1"));
    }
    let f = load1(f)?;
    let mut out = String::from("x_decimal,y_decimal,x_exact,y_exact\n");
    for i in 0..=points {
        let x = Rational::new(i.into(), points.into());
        let y = f.evaluate(&x)?;
        out.push_str(&format!(
            "{},{},{},{}\n",
            decimal(&x, precision),
            decimal(&y, precision),
            x,
            y
        ));
    }
    match csv {
        Some(path) => fs::write(path, out)?,
        None => io::stdout().write_all(out.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

/// Fixed-point decimal rendering of an exact rational (round half away from
/// zero at the last digit).
fn decimal(r: &Rational, precision: u32) -> String {
    let scale = num_bigint::BigInt::from(10).pow(precision);
    let scaled = (r * Rational::from_integer(scale.clone())).round().to_integer();
    let (int, frac) = (&scaled / &scale, (&scaled % &scale).magnitude().clone());
    if precision == 0 {
        return int.to_string();
    }
    let sign = if scaled.sign() == num_bigint::Sign::Minus && int == 0.into() { "-" } else { "" };
    format!("{sign}{int}.{frac:0>width$}", width = precision as usize)
}

fn parse_mode(mode: &str, base: Option<&str>) -> Result<GroupKind, CliError> {
    match mode {
        "F" | "PQ" | "P" => {
            if base.is_some() {
                return Err(CliError::domain("--base is only valid with --mode Pa"));
            }
            Ok(match mode {
                "F" => GroupKind::F,
                "PQ" => GroupKind::PQ,
                _ => GroupKind::P,
            })
        }
        "Pa" => {
            let base = base.ok_or_else(|| CliError::domain("--mode Pa requires --base p/q"))?;
            let a = rational_arg(base)?;
            if a <= Rational::from_integer(1.into()) {
                return Err(CliError::domain(format!("--base must exceed 1, got {a}")));
            }
            Ok(GroupKind::Pa(a))
        }
        other => Err(CliError::domain(format!(
            "unknown mode {other:?} (expected F, Pa, PQ or P)"
        ))),
    }
}

fn rational_arg(s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::parse(e.to_string()))
}

fn element_from_json(doc: ElementJson) -> Result<PLHomeo, CliError> {
    let mut pts = Vec::with_capacity(doc.breakpoints.len());
    for (i, (x, y)) in doc.breakpoints.iter().enumerate() {
        let x = parse_rational(x)
            .map_err(|_| CliError::parse(format!("breakpoint {i}: bad rational {x:?}")))?;
        let y = parse_rational(y)
            .map_err(|_| CliError::parse(format!("breakpoint {i}: bad rational {y:?}")))?;
        pts.push((x, y));
    }
    PLHomeo::from_canonical_points(pts).map_err(CliError::from)
}

fn element_to_json(f: &PLHomeo, basepoint: Option<&Rational>) -> ElementJson {
    ElementJson {
        breakpoints: f
            .points()
            .iter()
            .map(|(x, y)| (x.to_string(), y.to_string()))
            .collect(),
        basepoint: basepoint.map(|b| b.to_string()),
    }
}

fn emit_element(f: &PLHomeo, basepoint: Option<&Rational>) -> Result<(), CliError> {
    let json = serde_json::to_string(&element_to_json(f, basepoint))
        .expect("element serialization cannot fail");
    println!("{json}");
    Ok(())
}

fn read_file_element(path: &Path) -> Result<PLHomeo, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    let doc: ElementJson = serde_json::from_str(&text)
        .map_err(|e| CliError::parse(format!("{}: {e}", path.display())))?;
    element_from_json(doc)
}

/// Reads elements for the given (optional) file arguments; missing arguments
/// are taken, in order, from a stream of JSON documents on stdin.
fn load_elements(paths: &[&Option<PathBuf>]) -> Result<Vec<PLHomeo>, CliError> {
    let missing = paths.iter().filter(|p| p.is_none()).count();
    let mut from_stdin = Vec::new();
    if missing > 0 {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        for doc in serde_json::Deserializer::from_str(&buf).into_iter::<ElementJson>() {
            let doc = doc.map_err(|e| CliError::parse(format!("stdin: {e}")))?;
            from_stdin.push(element_from_json(doc)?);
        }
        if from_stdin.len() != missing {
            return Err(CliError::parse(format!(
                "expected {missing} element(s) on stdin, found {}",
                from_stdin.len()
            )));
        }
    }
    let mut stdin_iter = from_stdin.into_iter();
    let mut out = Vec::new();
    for p in paths {
        out.push(match p {
            Some(path) => read_file_element(path)?,
            None => stdin_iter.next().expect("stdin element count checked"),
        });
    }
    Ok(out)
}

fn load1(f: &Option<PathBuf>) -> Result<PLHomeo, CliError> {
    Ok(load_elements(&[f])?.pop().unwrap())
}

fn load2(f: &Option<PathBuf>, g: &Option<PathBuf>) -> Result<[PLHomeo; 2], CliError> {
    let mut v = load_elements(&[f, g])?;
    let g = v.pop().unwrap();
    let f = v.pop().unwrap();
    Ok([f, g])
}

fn load_target(target: &Option<PathBuf>) -> Result<PLHomeo, CliError> {
    load1(target)
}
