//! Command-line front end: argument parsing, preset suites and reports.
//!
//! ```text
//! multihilb conjecture --shape 2,2 --degrees "1,1*4" --box 10,10
//! multihilb verify --degrees "1,1;1,2*2" --seed 7 --format json
//! multihilb scan --prime 101
//! ```
//!
//! Exit codes: 0 when every verdict is as expected, 1 on a conjecture
//! mismatch (or a scan deviation), 2 on usage errors, 3 when an internal
//! invariant fails.

mod presets;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::forms::IdealFile;
use crate::gfp::PrimeField;
use crate::hilbert::{self, default_box, Generation, VerifyParams};
use crate::multidegree::{format_degrees, parse_degrees, DegreeBox, MultiDegree, Shape};
use crate::series::{conjectured_series, raw_product_series};

pub use presets::{presets, Preset};
pub use report::{
    emit_report, ConjectureReport, ExploreReport, ExploreStep, Format, HilbertReport, Report, ScanEntry, ScanReport,
};

pub const TOOL: &str = "multihilb";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Label attached to explorations outside the conjectured cases.
pub const EXPLORATORY_LABEL: &str = "exploratory: no conjectured answer is known for this case";

#[derive(Parser, Debug)]
#[command(name = "multihilb", version, about = "Hilbert functions of generic multigraded ideals over GF(p)")]
struct Cli {
    #[command(subcommand)]
    command: Subcommands,
}

#[derive(Subcommand, Debug)]
enum Subcommands {
    /// Print the conjectured generic series on a box.
    Conjecture(Flags),
    /// Compute the Hilbert function of one ideal.
    Hilbert(Flags),
    /// Compare random ideals against the conjectured series.
    Verify(Flags),
    /// Run the preset suite of known cases.
    Scan(Flags),
    /// Sweep the number of generators for cases without a conjectured answer.
    Explore(Flags),
}

#[derive(Args, Debug, Default)]
struct Flags {
    /// Factor dimensions, e.g. "1,1" for P1 x P1.
    #[arg(long)]
    shape: Option<String>,
    /// Generator degrees, e.g. "1,1*3;2,2".
    #[arg(long)]
    degrees: Option<String>,
    /// Inclusive upper bounds of the computation window, e.g. "8,8".
    #[arg(long = "box")]
    window: Option<String>,
    /// Prime modulus below 2^31.
    #[arg(long)]
    prime: Option<u64>,
    /// Seed; repeat for explicit seeds, or give once with --trials.
    #[arg(long)]
    seed: Vec<u64>,
    /// Number of consecutive seeds when --seed is given at most once.
    #[arg(long)]
    trials: Option<usize>,
    /// Generator kind: random, powers, or file:PATH.
    #[arg(long = "gen")]
    generation: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Worker threads for per-degree rank computations.
    #[arg(long)]
    jobs: Option<usize>,
    /// Re-run the parameters embedded in a JSON report.
    #[arg(long)]
    replay: Option<PathBuf>,
    /// Print per-seed timing to stderr.
    #[arg(long)]
    timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Conjecture,
    Hilbert,
    Verify,
    Scan,
    Explore,
}

/// Where generators come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenSource {
    Random,
    Powers,
    File { path: String, ideal: IdealFile },
}

impl GenSource {
    fn generation(&self) -> Option<Generation> {
        match self {
            GenSource::Random => Some(Generation::Random),
            GenSource::Powers => Some(Generation::Powers),
            GenSource::File { .. } => None,
        }
    }
}

/// The complete, resolved parameter set of a run. Embedded in every report;
/// running it again reproduces the report byte for byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    pub shape: Shape,
    pub degrees: String,
    #[serde(rename = "box")]
    pub window: DegreeBox,
    pub prime: PrimeField,
    pub seeds: Vec<u64>,
    #[serde(rename = "gen")]
    pub source: GenSource,
}

impl Parameters {
    pub fn degree_list(&self) -> Result<Vec<MultiDegree>> {
        parse_degrees(&self.degrees)
    }

    fn check(&self) -> Result<()> {
        let degrees = self.degree_list()?;
        for d in &degrees {
            self.shape.check_arity(d)?;
        }
        if self.window.arity() != self.shape.arity() {
            return Err(Error::usage(format!(
                "box {} does not match shape {}",
                self.window.bounds(),
                self.shape
            )));
        }
        Ok(())
    }
}

/// Parameters of a preset scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanParameters {
    pub prime: PrimeField,
    pub seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunSpec {
    Single(CommandKind, Parameters),
    Scan(ScanParameters),
}

impl RunSpec {
    pub fn kind(&self) -> CommandKind {
        match self {
            RunSpec::Single(kind, _) => *kind,
            RunSpec::Scan(_) => CommandKind::Scan,
        }
    }
}

/// A parsed command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub run: RunSpec,
    pub format: Format,
    pub jobs: Option<usize>,
    pub timings: bool,
}

/// Result of argument parsing: either work to do, or help/version text.
#[derive(Debug)]
pub enum Parsed {
    Run(Invocation),
    Display(String),
}

fn resolve_seeds(flags: &Flags, default_trials: usize) -> Result<Vec<u64>> {
    match flags.seed.as_slice() {
        [] | [_] => {
            let base = flags.seed.first().copied().unwrap_or(0);
            let trials = flags.trials.unwrap_or(default_trials);
            if trials == 0 {
                return Err(Error::usage("--trials must be at least 1"));
            }
            (0..trials as u64)
                .map(|i| base.checked_add(i).ok_or_else(|| Error::usage("seed range overflows u64")))
                .collect()
        }
        many => {
            if flags.trials.is_some_and(|t| t != many.len()) {
                return Err(Error::usage("--trials conflicts with the number of --seed values"));
            }
            Ok(many.to_vec())
        }
    }
}

fn resolve_source(flags: &Flags) -> Result<GenSource> {
    match flags.generation.as_deref().unwrap_or("random") {
        "random" => Ok(GenSource::Random),
        "powers" => Ok(GenSource::Powers),
        other => match other.strip_prefix("file:") {
            Some(path) if !path.is_empty() => {
                Ok(GenSource::File { path: path.to_string(), ideal: IdealFile::load(Path::new(path))? })
            }
            _ => Err(Error::usage(format!("--gen expects random, powers or file:PATH, got {other:?}"))),
        },
    }
}

fn resolve_parameters(kind: CommandKind, flags: &Flags) -> Result<Parameters> {
    let source = resolve_source(flags)?;
    let cli_prime = flags.prime.map(PrimeField::new).transpose()?;
    let (shape, degrees, prime) = match &source {
        GenSource::File { ideal, .. } => {
            if flags.degrees.is_some() {
                return Err(Error::usage("--degrees cannot be combined with --gen file:"));
            }
            if let Some(text) = &flags.shape {
                if Shape::parse(text)? != ideal.shape {
                    return Err(Error::usage(format!("--shape {text} disagrees with the ideal file shape {}", ideal.shape)));
                }
            }
            let prime = match (ideal.prime, cli_prime) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::usage(format!(
                        "--prime {} disagrees with the ideal file prime {}",
                        b.modulus(),
                        a.modulus()
                    )))
                }
                (Some(a), _) => a,
                (None, b) => b.unwrap_or_default(),
            };
            let degrees: Vec<MultiDegree> = ideal.generators.iter().map(|g| g.degree.clone()).collect();
            (ideal.shape.clone(), degrees, prime)
        }
        _ => {
            let shape = Shape::parse(flags.shape.as_deref().unwrap_or("1,1"))?;
            let text = flags.degrees.as_deref().ok_or_else(|| Error::usage("--degrees is required"))?;
            (shape, parse_degrees(text)?, cli_prime.unwrap_or_default())
        }
    };
    for d in &degrees {
        shape.check_arity(d)?;
    }
    let window = match &flags.window {
        Some(text) => DegreeBox::parse(text)?,
        None => default_box(&shape, &degrees),
    };
    let seeds = match (kind, &source) {
        (CommandKind::Conjecture, _) | (_, GenSource::File { .. }) => Vec::new(),
        (CommandKind::Hilbert, _) => vec![resolve_seeds(flags, 1)?[0]],
        _ => resolve_seeds(flags, 3)?,
    };
    if matches!(source, GenSource::File { .. }) && matches!(kind, CommandKind::Verify | CommandKind::Explore) {
        return Err(Error::usage("verify and explore draw generators; use hilbert for --gen file:"));
    }
    if matches!(source, GenSource::File { .. }) && !flags.seed.is_empty() {
        return Err(Error::usage("--seed has no effect with --gen file:"));
    }
    let params = Parameters { shape, degrees: format_degrees(&degrees), window, prime, seeds, source };
    params.check()?;
    Ok(params)
}

#[derive(Deserialize)]
struct ReplayHeader {
    command: CommandKind,
    parameters: serde_json::Value,
}

fn load_replay(kind: CommandKind, path: &Path) -> Result<RunSpec> {
    let text =
        std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    let bad = |e: serde_json::Error| Error::usage(format!("{} is not a report: {e}", path.display()));
    let header: ReplayHeader = serde_json::from_str(&text).map_err(bad)?;
    if header.command != kind {
        return Err(Error::usage(format!("{} was produced by a different command", path.display())));
    }
    Ok(match kind {
        CommandKind::Scan => RunSpec::Scan(serde_json::from_value(header.parameters).map_err(bad)?),
        _ => {
            let params: Parameters = serde_json::from_value(header.parameters).map_err(bad)?;
            params.check()?;
            RunSpec::Single(kind, params)
        }
    })
}

/// Parses a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<Parsed>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind::*;
            return match e.kind() {
                DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand => {
                    Ok(Parsed::Display(e.render().to_string()))
                }
                _ => Err(Error::Usage(e.render().to_string().trim_end().trim_start_matches("error: ").to_string())),
            };
        }
    };
    let (kind, flags) = match cli.command {
        Subcommands::Conjecture(f) => (CommandKind::Conjecture, f),
        Subcommands::Hilbert(f) => (CommandKind::Hilbert, f),
        Subcommands::Verify(f) => (CommandKind::Verify, f),
        Subcommands::Scan(f) => (CommandKind::Scan, f),
        Subcommands::Explore(f) => (CommandKind::Explore, f),
    };
    if flags.jobs == Some(0) {
        return Err(Error::usage("--jobs must be at least 1"));
    }
    let run = if let Some(path) = &flags.replay {
        let given = flags.shape.is_some()
            || flags.degrees.is_some()
            || flags.window.is_some()
            || flags.prime.is_some()
            || !flags.seed.is_empty()
            || flags.trials.is_some()
            || flags.generation.is_some();
        if given {
            return Err(Error::usage("--replay takes every parameter from the report; drop the other flags"));
        }
        load_replay(kind, path)?
    } else if kind == CommandKind::Scan {
        if flags.shape.is_some() || flags.degrees.is_some() || flags.window.is_some() || flags.generation.is_some() {
            return Err(Error::usage("scan runs fixed presets; only --prime, --seed and --trials apply"));
        }
        RunSpec::Scan(ScanParameters {
            prime: flags.prime.map(PrimeField::new).transpose()?.unwrap_or_default(),
            seeds: resolve_seeds(&flags, 3)?,
        })
    } else {
        RunSpec::Single(kind, resolve_parameters(kind, &flags)?)
    };
    Ok(Parsed::Run(Invocation { run, format: flags.format, jobs: flags.jobs, timings: flags.timings }))
}

/// True when the product formula is the conjectured answer for this case.
pub fn in_conjectured_scope(shape: &Shape, degrees: &[MultiDegree], source: &GenSource) -> bool {
    if *source != GenSource::Random {
        return false;
    }
    let dims = shape.dims();
    dims.len() == 1
        || dims == [1, 1]
        || (dims == [1, 1, 1] && degrees.iter().all(|d| d.parts() == [1, 1, 1]))
}

fn verify_params(p: &Parameters) -> Result<VerifyParams> {
    Ok(VerifyParams {
        shape: p.shape.clone(),
        degrees: p.degree_list()?,
        window: p.window.clone(),
        field: p.prime,
        seeds: p.seeds.clone(),
        generation: p.source.generation().ok_or_else(|| Error::usage("this command draws generators"))?,
    })
}

fn total(timings: &[Duration]) -> Duration {
    timings.iter().sum()
}

/// Runs an invocation and returns its report. Timing lines go to `log`.
pub fn execute(run: &RunSpec, log: &mut dyn Write) -> Result<Report> {
    match run {
        RunSpec::Single(CommandKind::Conjecture, p) => {
            let degrees = p.degree_list()?;
            Ok(Report::Conjecture(ConjectureReport {
                params: p.clone(),
                raw: raw_product_series(&p.shape, &degrees, &p.window)?,
                conjectured: conjectured_series(&p.shape, &degrees, &p.window)?,
            }))
        }
        RunSpec::Single(CommandKind::Hilbert, p) => {
            let spec = match &p.source {
                GenSource::File { ideal, .. } => ideal.to_spec(p.prime)?,
                source => source.generation().expect("not a file").spec(&p.shape, &p.degree_list()?, p.prime, p.seeds[0])?,
            };
            let result = hilbert::compute(&spec, &p.window)?;
            let _ = writeln!(log, "hilbert: {:?}", total(&result.timings));
            Ok(Report::Hilbert(HilbertReport { params: p.clone(), result }))
        }
        RunSpec::Single(CommandKind::Verify, p) => {
            let report = hilbert::verify(&verify_params(p)?)?;
            for r in &report.runs {
                let _ = writeln!(log, "verify: seed {} {:?}", r.seed, total(&r.timings));
            }
            Ok(Report::Verify(p.clone(), report))
        }
        RunSpec::Single(CommandKind::Explore, p) => {
            let base = verify_params(p)?;
            let label = (!in_conjectured_scope(&p.shape, &base.degrees, &p.source)).then(|| EXPLORATORY_LABEL.to_string());
            let mut steps = Vec::new();
            for r in 1..=base.degrees.len() {
                let params = VerifyParams { degrees: base.degrees[..r].to_vec(), ..base.clone() };
                let report = hilbert::verify(&params)?;
                let _ = writeln!(
                    log,
                    "explore: r={r} {:?}",
                    report.runs.iter().map(|x| total(&x.timings)).sum::<Duration>()
                );
                steps.push(ExploreStep { r, report });
            }
            Ok(Report::Explore(ExploreReport { params: p.clone(), label, steps }))
        }
        RunSpec::Single(CommandKind::Scan, _) => unreachable!("scan carries its own parameters"),
        RunSpec::Scan(sp) => {
            let mut entries = Vec::new();
            for preset in presets() {
                let window = default_box(&preset.shape, &preset.degrees);
                let params = VerifyParams {
                    shape: preset.shape.clone(),
                    degrees: preset.degrees.clone(),
                    window,
                    field: sp.prime,
                    seeds: sp.seeds.clone(),
                    generation: Generation::Random,
                };
                let report = hilbert::verify(&params)?;
                let _ = writeln!(
                    log,
                    "scan: {} {} {:?}",
                    preset.case,
                    format_degrees(&preset.degrees),
                    report.runs.iter().map(|x| total(&x.timings)).sum::<Duration>()
                );
                entries.push(ScanEntry { preset, report });
            }
            Ok(Report::Scan(ScanReport { params: sp.clone(), entries }))
        }
    }
}

/// Full command-line entry point; returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let invocation = match parse_args(argv) {
        Ok(Parsed::Run(inv)) => inv,
        Ok(Parsed::Display(text)) => {
            let _ = write!(out, "{text}");
            return 0;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let mut log = Vec::new();
    let outcome = match invocation.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| execute(&invocation.run, &mut log)),
            Err(e) => Err(Error::usage(format!("cannot start {n} workers: {e}"))),
        },
        None => execute(&invocation.run, &mut log),
    };
    if invocation.timings {
        let _ = err.write_all(&log);
    }
    match outcome {
        Ok(report) => {
            let _ = out.write_all(emit_report(&report, invocation.format).as_bytes());
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
