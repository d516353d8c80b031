//! `tbframe`: list spaces, evaluate objects, classify, run verification suites.

mod objects;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;
use tbframe::report::SCHEMA_VERSION;
use tbframe::space::{catalog, SpaceDescriptor};
use tbframe::{
    classify, lookup_space, run_suite, GeomError, RegimeLabel, ReportDocument, SpacePoint, Suite, Summary, Tolerances,
};

#[derive(Parser)]
#[command(name = "tbframe", version, about = "Frame geometry on the tangent bundle: evaluation and verification")]
struct Cli {
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Write output to FILE instead of stdout
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the space catalog
    List,
    /// Evaluate an object at one point
    Eval(EvalArgs),
    /// Detect the regime of a space
    Classify(SampleArgs),
    /// Run a verification suite
    Verify(VerifyArgs),
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    space: String,
    #[arg(long, default_value_t = 50)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    space: String,
    /// "x1,..,xn;y1,..,yn"; defaults to the first sample point for --seed
    #[arg(long)]
    point: Option<String>,
    /// e.g. torsion.canonical, curvature.dual, metric
    #[arg(long)]
    object: String,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    sample: SampleArgs,
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    tol_algebraic: Option<f64>,
    #[arg(long)]
    tol_d1: Option<f64>,
    #[arg(long)]
    tol_d2: Option<f64>,
}

enum Failure {
    Usage(String),
    Checks,
}

impl From<GeomError> for Failure {
    fn from(e: GeomError) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out = Result<(String, bool), Failure>;

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn need_samples(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    Ok(())
}

fn list(as_json: bool) -> Out {
    let spaces: Vec<SpaceDescriptor> = catalog().iter().map(|s| s.descriptor()).collect();
    if as_json {
        return Ok((json(&spaces), true));
    }
    let mut s = String::new();
    for d in spaces {
        s.push_str(&format!("{:<10} n={}  {:<8} {}\n", d.name, d.n, d.classification.as_str(), d.summary));
    }
    Ok((s, true))
}

#[derive(Serialize)]
struct EvalDocument {
    tool: &'static str,
    tool_version: &'static str,
    space: String,
    x: Vec<f64>,
    y: Vec<f64>,
    object: String,
    blocks: Vec<objects::BlockOut>,
}

fn eval(a: &EvalArgs, as_json: bool) -> Out {
    let space = lookup_space(&a.space)?;
    let p = match &a.point {
        Some(s) => SpacePoint::parse(s)?,
        None => space.sample(1, a.seed).remove(0),
    };
    let blocks = objects::evaluate(&space, &p, &a.object)?;
    if as_json {
        let doc = EvalDocument {
            tool: "tbframe",
            tool_version: env!("CARGO_PKG_VERSION"),
            space: space.name.clone(),
            x: p.x.clone(),
            y: p.y.clone(),
            object: a.object.clone(),
            blocks,
        };
        return Ok((json(&doc), true));
    }
    let head = format!("{} at x = {:?}, y = {:?}: {}\n", space.name, p.x, p.y, a.object);
    Ok((head + &objects::render(&blocks), true))
}

fn classify_cmd(a: &SampleArgs, as_json: bool) -> Out {
    need_samples(a.samples)?;
    let space = lookup_space(&a.space)?;
    let tol = Tolerances::default().regime;
    let r = classify(&space, a.samples, a.seed, tol)?;
    let ok = r.label != RegimeLabel::Indeterminate;
    if as_json {
        return Ok((json(&r), ok));
    }
    let mut s = format!("{}: {}\n", r.space, r.label.as_str());
    for (k, v) in &r.residuals {
        s.push_str(&format!("  {k:<18} {v:.3e}\n"));
    }
    Ok((s, ok))
}

fn verify(a: &VerifyArgs, as_json: bool) -> Out {
    need_samples(a.sample.samples)?;
    let space = lookup_space(&a.sample.space)?;
    let suite = Suite::parse(&a.suite)?;
    let mut tol = Tolerances::default();
    tol.algebraic = a.tol_algebraic.unwrap_or(tol.algebraic);
    tol.d1 = a.tol_d1.unwrap_or(tol.d1);
    tol.d2 = a.tol_d2.unwrap_or(tol.d2);
    tol.validate()?;
    let points = space.sample(a.sample.samples, a.sample.seed);
    let checks = run_suite(&space, suite, &points, &tol)?;
    let summary = Summary::of(&checks);
    let ok = summary.overall_pass;
    let doc = ReportDocument {
        tool: "tbframe".into(),
        tool_version: env!("CARGO_PKG_VERSION").into(),
        schema_version: SCHEMA_VERSION,
        space: space.descriptor(),
        suite: suite.name().into(),
        samples: a.sample.samples,
        seed: a.sample.seed,
        tolerances: tol,
        checks,
        summary,
    };
    if as_json {
        return Ok((json(&doc), ok));
    }
    let mut s = format!("{} / {}: {} samples, seed {}\n", doc.space.name, doc.suite, doc.samples, doc.seed);
    for c in &doc.checks {
        let st = c.status.as_str().to_uppercase();
        s.push_str(&format!("{st:<10} {:<44} {:>10.3e} < {:.0e}\n", c.id, c.max_residual, c.tolerance));
    }
    let m = &doc.summary;
    s.push_str(&format!("{} checks: {} pass, {} degenerate, {} fail\n", m.total, m.pass, m.degenerate, m.fail));
    Ok((s, ok))
}

fn emit(text: &str, out: &Option<std::path::PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::List => list(cli.json),
        Cmd::Eval(a) => eval(a, cli.json),
        Cmd::Classify(a) => classify_cmd(a, cli.json),
        Cmd::Verify(a) => verify(a, cli.json),
    }
    .and_then(|(text, ok)| {
        emit(&text, &cli.out)?;
        if ok {
            Ok(())
        } else {
            Err(Failure::Checks)
        }
    });
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            if m.starts_with("unknown object") {
                eprintln!("objects: {}", objects::OBJECTS.join(", "));
            }
            ExitCode::from(2)
        }
    }
}
