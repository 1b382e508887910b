//! Command-line front end for the `abcover` library.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use abcover::covered::{self, Obstruction};
use abcover::enumerate::{self, EnumerationMode, EnumerationTask};
use abcover::factor::{self, DegreeSpec, FactorVerdict};
use abcover::graph::families;
use abcover::harness::{
    self, report, CampaignConfig, CorpusSpec, SuiteConfig, TheoremId, VerificationReport,
};
use abcover::{graph6, spectral, Error, Graph};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "abcover", version, about = "[a,b]-covered graphs and factors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether each graph is [a,b]-covered.
    CheckCovered(CheckArgs),
    /// Decide whether each graph has an [a,b]-factor.
    CheckFactor(CheckArgs),
    /// Spectral radius of one graph.
    Rho(RhoArgs),
    /// Write one graph6 line per isomorphism class.
    Enumerate(EnumerateArgs),
    /// Run an extremal campaign and write its report.
    Verify(VerifyArgs),
    /// Run property suites.
    Suite(SuiteArgs),
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["graph6", "file"])))]
struct CheckArgs {
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    /// One graph in graph6 form.
    #[arg(long)]
    graph6: Option<String>,
    /// File with one graph6 line per graph.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("input").required(true).args(["graph6", "h"])))]
struct RhoArgs {
    #[arg(long)]
    graph6: Option<String>,
    /// The graph H(n, gamma).
    #[arg(long = "H", num_args = 2, value_names = ["N", "GAMMA"])]
    h: Option<Vec<usize>>,
    #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
    tol: f64,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Only graphs whose complement has at most K edges.
    #[arg(long, value_name = "K")]
    complement_budget: Option<usize>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_campaign)]
    theorem: TheoremId,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    a: usize,
    #[arg(long)]
    b: usize,
    /// auto, all, dense, dense:K or file:PATH.
    #[arg(long, default_value = "auto")]
    corpus: CorpusSpec,
    #[arg(long, default_value_t = spectral::DEFAULT_COMPARE_TOL)]
    tol: f64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long)]
    report: PathBuf,
}

#[derive(Args)]
struct SuiteArgs {
    /// Comma-separated suite ids.
    #[arg(long, value_delimiter = ',', required = true, value_parser = parse_suite)]
    names: Vec<TheoremId>,
    /// auto, all, all-upto, dense, dense:K or file:PATH.
    #[arg(long, default_value = "auto")]
    corpus: CorpusSpec,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    a: usize,
    #[arg(long, default_value_t = 2)]
    b: usize,
    #[arg(long, default_value_t = spectral::DEFAULT_TOL)]
    tol: f64,
    #[arg(long, default_value_t = SuiteConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = SuiteConfig::default().random_instances)]
    instances: usize,
    #[arg(long)]
    jobs: Option<usize>,
    /// Report file; the reports go to stdout when omitted.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn parse_campaign(s: &str) -> Result<TheoremId, String> {
    let t: TheoremId = s.parse().map_err(|e: Error| e.to_string())?;
    if t.is_suite() {
        return Err(format!("{t} is a property suite; use the suite subcommand"));
    }
    Ok(t)
}

fn parse_suite(s: &str) -> Result<TheoremId, String> {
    let t: TheoremId = s.parse().map_err(|e: Error| e.to_string())?;
    if !t.is_suite() {
        return Err(format!("{t} is a campaign; use the verify subcommand"));
    }
    Ok(t)
}

/// Outcome of a subcommand that ran to completion.
enum Outcome {
    Pass,
    Fail,
}

fn exit_code(e: &Error) -> u8 {
    match e.root() {
        Error::ResourceLimit(_) | Error::NumericFailure(_) | Error::InvariantViolation(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::CheckCovered(args) => check(&args, check_covered),
        Command::CheckFactor(args) => check(&args, check_factor),
        Command::Rho(args) => rho(&args),
        Command::Enumerate(args) => enumerate(&args),
        Command::Verify(args) => verify(&args),
        Command::Suite(args) => suite(&args),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read_inputs(args: &CheckArgs) -> abcover::Result<Vec<Graph>> {
    match (&args.graph6, &args.file) {
        (Some(text), _) => Ok(vec![graph6::parse(text)?]),
        (None, Some(path)) => enumerate::ingest_graph6_path(path)?.collect(),
        (None, None) => unreachable!("clap requires an input"),
    }
}

/// Runs `decide` on every input graph; passes when every graph has the property.
fn check(
    args: &CheckArgs,
    decide: fn(&Graph, usize, usize) -> abcover::Result<Option<String>>,
) -> abcover::Result<Outcome> {
    let graphs = read_inputs(args)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut all = true;
    for g in &graphs {
        let line = match decide(g, args.a, args.b)? {
            None => "yes".to_string(),
            Some(w) => {
                all = false;
                format!("no {w}")
            }
        };
        writeln!(out, "{} {line}", graph6::encode(g))?;
    }
    Ok(if all { Outcome::Pass } else { Outcome::Fail })
}

/// `None` when covered, otherwise the obstruction in report notation.
fn check_covered(g: &Graph, a: usize, b: usize) -> abcover::Result<Option<String>> {
    let verdict = if g.order() <= covered::DEFAULT_MAX_SCAN_ORDER {
        covered::is_ab_covered_structural(g, a, b)?
    } else {
        covered::is_ab_covered_definitional(g, a, b)?
    };
    Ok(verdict.obstruction.map(|o| {
        let w = match &o {
            Obstruction::Structural(w) => harness::Witness::from(w),
            Obstruction::Edge(e) => harness::Witness::Edge(*e),
            Obstruction::NoFactor => harness::Witness::NoFactor,
        };
        w.to_string()
    }))
}

fn check_factor(g: &Graph, a: usize, b: usize) -> abcover::Result<Option<String>> {
    if a == 0 {
        return Err(Error::InvalidParameter("need a >= 1".into()));
    }
    let spec = DegreeSpec::uniform(g.order(), a, b)?;
    Ok(match factor::has_gf_factor(g, &spec)? {
        FactorVerdict::Exists => None,
        FactorVerdict::Deficient(c) => Some(
            harness::Witness::Deficiency {
                s: c.s,
                t: c.t,
                value: c.value,
            }
            .to_string(),
        ),
    })
}

fn rho(args: &RhoArgs) -> abcover::Result<Outcome> {
    let g = match (&args.graph6, &args.h) {
        (Some(text), _) => graph6::parse(text)?,
        (None, Some(h)) => families::h_graph(h[0], h[1])?,
        (None, None) => unreachable!("clap requires an input"),
    };
    let r = spectral::spectral_radius(&g, args.tol)?;
    let (lower, upper) = r.enclosure();
    println!("graph6 {}", graph6::encode(&g));
    println!("rho {:.15}", r.rho);
    println!("residual {:e}", r.residual);
    println!("enclosure {lower:.15} {upper:.15}");
    println!("iterations {}", r.iterations);
    Ok(Outcome::Pass)
}

fn enumerate(args: &EnumerateArgs) -> abcover::Result<Outcome> {
    let mode = match args.complement_budget {
        Some(k) => EnumerationMode::ComplementBudget(k),
        None => EnumerationMode::All,
    };
    let graphs = EnumerationTask::new(args.n, mode)?.run()?;
    enumerate::write_graph6(BufWriter::new(File::create(&args.out)?), &graphs)?;
    println!("{} graphs written to {}", graphs.len(), args.out.display());
    Ok(Outcome::Pass)
}

fn with_jobs<T>(
    jobs: Option<usize>,
    f: impl FnOnce() -> abcover::Result<T> + Send,
) -> abcover::Result<T>
where
    T: Send,
{
    match jobs {
        None => f(),
        Some(0) => Err(Error::InvalidParameter("--jobs must be positive".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::ResourceLimit(format!("thread pool: {e}")))?
            .install(f),
    }
}

fn write_reports(path: &Path, reports: &[VerificationReport]) -> abcover::Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    out.write_all(report::to_text(reports).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn summarize(r: &VerificationReport) {
    println!(
        "{} n={} a={} b={}: {} (extremal value {}, {} extremal graphs, {} counterexamples, corpus {} with {} graphs)",
        r.theorem,
        opt(r.n),
        opt(r.a),
        opt(r.b),
        r.status.as_str(),
        r.extremal_value,
        r.extremal_set.len(),
        r.counterexamples.len(),
        r.corpus,
        r.corpus_size
    );
}

fn opt(v: Option<usize>) -> String {
    v.map_or_else(|| "-".into(), |v| v.to_string())
}

fn verify(args: &VerifyArgs) -> abcover::Result<Outcome> {
    let config = CampaignConfig {
        corpus: args.corpus.clone(),
        tol: args.tol,
    };
    let r = with_jobs(args.jobs, || {
        harness::verify(args.theorem, args.n, args.a, args.b, &config)
    })?;
    write_reports(&args.report, std::slice::from_ref(&r))?;
    summarize(&r);
    Ok(if r.passed() {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}

fn suite(args: &SuiteArgs) -> abcover::Result<Outcome> {
    let config = SuiteConfig {
        corpus: args.corpus.clone(),
        n: args.n,
        a: args.a,
        b: args.b,
        tol: args.tol,
        seed: args.seed,
        random_instances: args.instances,
        ..SuiteConfig::default()
    };
    let reports = with_jobs(args.jobs, || {
        harness::run_property_suites(&args.names, &config)
    })?;
    match &args.report {
        Some(path) => {
            write_reports(path, &reports)?;
            reports.iter().for_each(summarize);
        }
        None => print!("{}", report::to_text(&reports)),
    }
    Ok(if reports.iter().all(VerificationReport::passed) {
        Outcome::Pass
    } else {
        Outcome::Fail
    })
}
