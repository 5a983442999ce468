use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cliffspin::check::{run_checks, CheckOptions, CheckReport};
use cliffspin::classify::{
    build_table, classify_structural, render_table, ClassificationJson, Family, TableFormat,
    DEFAULT_SEED, DEFAULT_TRIALS,
};
use cliffspin::clifford::{MultivectorJson, Signature};
use cliffspin::gamma::{build_representation, RepresentationJson};
use cliffspin::geometry::{
    dirac_operator, spinor_field_to_csv, ConnectionJson, FrameJson, SpinorFieldJson,
};
use cliffspin::sm::{hypercharge_audit, Registry};
use cliffspin::spin::{boost, chi, component_of, rotation, Component, SpinElement};
use cliffspin::FloatRepresentation;

#[derive(Parser, Debug)]
#[command(name = "cliffspin", version, about = "Clifford algebras, spinors and spin groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized procedures.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Numerical tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// Largest n handed to the structural oracle.
    #[arg(long, global = true, default_value_t = 6)]
    max_n: u32,
    /// Read and write generator indices with the time-like generators first.
    #[arg(long, global = true)]
    time_first: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isomorphism type of C(p,q) with its reduction chain.
    Classify {
        p: u32,
        q: u32,
        /// Also run the structural oracle and fail on disagreement.
        #[arg(long)]
        oracle: bool,
    },
    /// Classification table for a family of signatures.
    Table {
        #[arg(long, value_enum, default_value_t = FamilyArg::Euclidean)]
        family: FamilyArg,
        #[arg(long, default_value_t = 4)]
        min: u32,
        #[arg(long, default_value_t = 11)]
        max: u32,
    },
    /// Gamma matrices, chirality and conjugation operator.
    Rep { p: u32, q: u32 },
    #[command(subcommand)]
    Spin(SpinCommand),
    #[command(subcommand)]
    Dirac(DiracCommand),
    #[command(subcommand)]
    Sm(SmCommand),
    /// Cross-validation suites: table against oracle, periodicity, χ.
    Check {
        /// Number of random χ samples.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FamilyArg {
    Euclidean,
    Hyperbolic,
}

#[derive(Subcommand, Debug)]
enum SpinCommand {
    /// exp(β/2 · γ^t γ^axis) for a time-like t and space-like axis.
    Boost {
        #[arg(long, value_parser = parse_signature)]
        signature: Signature,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long)]
        axis: usize,
        /// Time-like generator; defaults to the first one.
        #[arg(long)]
        time: Option<usize>,
    },
    /// Rotation by θ in the plane of two generators of the same sign.
    Rotate {
        #[arg(long, value_parser = parse_signature)]
        signature: Signature,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, value_parser = parse_plane)]
        plane: (usize, usize),
    },
}

#[derive(Subcommand, Debug)]
enum DiracCommand {
    /// Apply the Dirac operator to a spinor field.
    Apply {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        conn: PathBuf,
        #[arg(long)]
        psi: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SmCommand {
    /// Left against right hypercharge sums per family and sector.
    Hypercharges {
        /// Registry file; the bundled one is used when absent.
        #[arg(long)]
        registry: Option<PathBuf>,
    },
}

fn parse_signature(s: &str) -> Result<Signature, String> {
    let (p, q) = s
        .split_once(',')
        .ok_or_else(|| format!("expected p,q but got {s:?}"))?;
    let p = p.trim().parse().map_err(|_| format!("bad p in {s:?}"))?;
    let q = q.trim().parse().map_err(|_| format!("bad q in {s:?}"))?;
    Signature::new(p, q).map_err(|e| e.to_string())
}

fn parse_plane(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected mu,nu but got {s:?}"))?;
    let a = a.trim().parse().map_err(|_| format!("bad index in {s:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad index in {s:?}"))?;
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<cliffspin::Error> for Failure {
    fn from(e: cliffspin::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn unsupported(command: &str, format: Format) -> Failure {
    Failure::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn json<T: Serialize>(value: &T) -> Outcome {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn signature(p: u32, q: u32) -> Result<Signature, Failure> {
    Ok(Signature::new(p, q)?)
}

fn classify(g: &Global, p: u32, q: u32, oracle: bool) -> Outcome {
    let sig = signature(p, q)?;
    let result = ClassificationJson::new(sig);
    if oracle {
        let found = classify_structural(sig, DEFAULT_TRIALS, g.seed)?;
        if found != result.ty {
            return Err(Failure::Domain(format!(
                "{sig}: reduction gives {} but the structural oracle gives {found}",
                result.ty
            )));
        }
    }
    match g.format {
        Format::Json => json(&result),
        Format::Md => {
            let mut out = format!("C{sig} ≅ {}\n\n", result.ty);
            for step in &result.chain.steps {
                let rule = serde_json::to_value(&step.rule)?;
                let name = rule["rule"].as_str().unwrap_or_default().replace('_', " ");
                writeln!(out, "- {} ({name})", step.expression).expect("string write");
            }
            Ok(out)
        }
        Format::Csv => Err(unsupported("classify", g.format)),
    }
}

fn table(g: &Global, family: FamilyArg, min: u32, max: u32) -> Outcome {
    let family = match family {
        FamilyArg::Euclidean => Family::Euclidean,
        FamilyArg::Hyperbolic => Family::Hyperbolic,
    };
    let rows = build_table(family, min, max)?;
    let format = match g.format {
        Format::Json => TableFormat::Json,
        Format::Md => TableFormat::Markdown,
        Format::Csv => TableFormat::Csv,
    };
    Ok(render_table(family, &rows, format)?)
}

fn relabel(rep: &mut FloatRepresentation) {
    let order = rep.signature.time_first_order();
    rep.gammas = order.iter().map(|&mu| rep.gammas[mu].clone()).collect();
}

fn rep(g: &Global, p: u32, q: u32) -> Outcome {
    if g.format != Format::Json {
        return Err(unsupported("rep", g.format));
    }
    let mut rep: FloatRepresentation = build_representation(signature(p, q)?)?;
    if g.time_first {
        relabel(&mut rep);
    }
    json(&RepresentationJson::from(&rep))
}

/// Canonical index of a user-supplied generator index.
fn canonical(g: &Global, sig: Signature, mu: usize) -> Result<usize, Failure> {
    let n = sig.n() as usize;
    if mu >= n {
        return Err(Failure::Domain(format!("generator index {mu} out of range for {sig}")));
    }
    Ok(if g.time_first { sig.time_first_order()[mu] } else { mu })
}

#[derive(Serialize)]
struct SpinOutput {
    element: MultivectorJson,
    chi: Vec<Vec<f64>>,
    component: Component,
}

fn spin(g: &Global, command: &SpinCommand) -> Outcome {
    let (sig, s): (Signature, SpinElement<f64>) = match *command {
        SpinCommand::Boost {
            signature: sig,
            beta,
            axis,
            time,
        } => {
            let time = match time {
                Some(t) => canonical(g, sig, t)?,
                None => *sig.time_like().first().ok_or_else(|| {
                    Failure::Domain(format!("{sig} has no time-like generator"))
                })?,
            };
            (sig, boost(sig, time, canonical(g, sig, axis)?, beta)?)
        }
        SpinCommand::Rotate {
            signature: sig,
            theta,
            plane: (mu, nu),
        } => (
            sig,
            rotation(sig, canonical(g, sig, mu)?, canonical(g, sig, nu)?, theta)?,
        ),
    };
    let m = chi(&s, g.tolerance)?;
    let mut rows = m.rows();
    if g.time_first {
        let order = sig.time_first_order();
        rows = order
            .iter()
            .map(|&r| order.iter().map(|&c| rows[r][c]).collect())
            .collect();
    }
    let out = SpinOutput {
        element: MultivectorJson::from(&s.value.prune(g.tolerance)),
        chi: rows,
        component: component_of(&s, g.tolerance)?,
    };
    match g.format {
        Format::Json => json(&out),
        Format::Md => {
            let mut text = format!("component: {}\n\n", out.component);
            for row in &out.chi {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:.12}")).collect();
                writeln!(text, "| {} |", cells.join(" | ")).expect("string write");
            }
            Ok(text)
        }
        Format::Csv => Err(unsupported("spin", g.format)),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn dirac(g: &Global, command: &DiracCommand) -> Outcome {
    let DiracCommand::Apply { frame, conn, psi } = command;
    let frame = read_json::<FrameJson>(frame)?.into_field()?;
    let conn = read_json::<ConnectionJson>(conn)?.into_field()?;
    let psi = read_json::<SpinorFieldJson>(psi)?.into_field()?;
    let rep: FloatRepresentation = build_representation(psi.signature)?;
    let out = dirac_operator(&psi, &conn, &frame, &rep)?;
    match g.format {
        Format::Json => Ok(serde_json::to_string(&SpinorFieldJson::from(&out))? + "\n"),
        Format::Csv => Ok(spinor_field_to_csv(&out)?),
        Format::Md => Err(unsupported("dirac apply", g.format)),
    }
}

fn sm(g: &Global, command: &SmCommand) -> Outcome {
    let SmCommand::Hypercharges { registry } = command;
    let registry = match registry {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?;
            Registry::from_json_str(&text)?
        }
        None => Registry::standard_model(),
    };
    let audit = hypercharge_audit(&registry)?;
    let out = match g.format {
        Format::Json => json(&audit)?,
        Format::Md => {
            let mut text = String::from("| family | sector | left | right | balanced |\n|---|---|---|---|---|\n");
            for e in &audit {
                let sector = serde_json::to_value(e.sector)?;
                writeln!(
                    text,
                    "| {} | {} | {} | {} | {} |",
                    e.family,
                    sector.as_str().unwrap_or_default(),
                    e.left_sum,
                    e.right_sum,
                    if e.balanced { "yes" } else { "no" }
                )
                .expect("string write");
            }
            text
        }
        Format::Csv => return Err(unsupported("sm hypercharges", g.format)),
    };
    if audit.iter().all(|e| e.balanced) {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Domain("hypercharge sums do not balance".into()))
    }
}

fn render_check(report: &CheckReport, format: Format) -> Outcome {
    match format {
        Format::Json => json(report),
        Format::Md => {
            let mut text = String::new();
            for suite in &report.suites {
                writeln!(text, "{}: {} passed, {} failed", suite.name, suite.passed, suite.failed)
                    .expect("string write");
                for f in &suite.failures {
                    writeln!(text, "  - {f}").expect("string write");
                }
            }
            writeln!(text, "total: {} passed, {} failed", report.passed(), report.failed())
                .expect("string write");
            Ok(text)
        }
        Format::Csv => Err(unsupported("check", format)),
    }
}

fn check(g: &Global, samples: usize) -> Outcome {
    let opts = CheckOptions {
        max_n: g.max_n,
        seed: g.seed,
        tolerance: g.tolerance,
        chi_samples: samples,
        ..CheckOptions::default()
    };
    let report = run_checks(&opts);
    let out = render_check(&report, g.format)?;
    if report.ok() {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Domain(format!("{} checks failed", report.failed())))
    }
}

fn run(cli: &Cli) -> Outcome {
    let g = &cli.global;
    match &cli.command {
        Command::Classify { p, q, oracle } => classify(g, *p, *q, *oracle),
        Command::Table { family, min, max } => table(g, *family, *min, *max),
        Command::Rep { p, q } => rep(g, *p, *q),
        Command::Spin(c) => spin(g, c),
        Command::Dirac(c) => dirac(g, c),
        Command::Sm(c) => sm(g, c),
        Command::Check { samples } => check(g, *samples),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
