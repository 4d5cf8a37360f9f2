//! Report rendering. Every format is a pure function of the report, so
//! identical runs give identical bytes.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use super::{CommandKind, GenSource, Parameters, Preset, ScanParameters, TOOL, VERSION};
use crate::hilbert::{HilbertResult, VerifyReport};
use crate::multidegree::format_degrees;
use crate::series::{truncation_frontier, IntSeries, Violation};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub params: Parameters,
    pub raw: IntSeries,
    pub conjectured: IntSeries,
}

#[derive(Clone, Debug)]
pub struct HilbertReport {
    pub params: Parameters,
    pub result: HilbertResult,
}

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub preset: Preset,
    pub report: VerifyReport,
}

impl ScanEntry {
    pub fn verdict(&self) -> &'static str {
        match (self.preset.expect_match, self.report.matched) {
            (true, true) => "match",
            (false, false) => "expected-mismatch",
            (true, false) => "DEVIATION: mismatch",
            (false, true) => "DEVIATION: unexpected match",
        }
    }

    pub fn as_expected(&self) -> bool {
        self.preset.expect_match == self.report.matched
    }
}

#[derive(Clone, Debug)]
pub struct ScanReport {
    pub params: ScanParameters,
    pub entries: Vec<ScanEntry>,
}

impl ScanReport {
    pub fn deviations(&self) -> usize {
        self.entries.iter().filter(|e| !e.as_expected()).count()
    }
}

#[derive(Clone, Debug)]
pub struct ExploreStep {
    pub r: usize,
    pub report: VerifyReport,
}

#[derive(Clone, Debug)]
pub struct ExploreReport {
    pub params: Parameters,
    pub label: Option<String>,
    pub steps: Vec<ExploreStep>,
}

#[derive(Clone, Debug)]
pub enum Report {
    Conjecture(ConjectureReport),
    Hilbert(HilbertReport),
    Verify(Parameters, VerifyReport),
    Scan(ScanReport),
    Explore(ExploreReport),
}

impl Report {
    pub fn kind(&self) -> CommandKind {
        match self {
            Report::Conjecture(_) => CommandKind::Conjecture,
            Report::Hilbert(_) => CommandKind::Hilbert,
            Report::Verify(..) => CommandKind::Verify,
            Report::Scan(_) => CommandKind::Scan,
            Report::Explore(_) => CommandKind::Explore,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Report::Verify(_, v) if !v.matched => 1,
            Report::Scan(s) if s.deviations() > 0 => 1,
            _ => 0,
        }
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&json_document(report)).expect("reports serialize");
            text.push('\n');
            text
        }
        Format::Csv => csv(report),
        Format::Table => table(report),
    }
}

/// Nested integer arrays, outermost axis = factor 0.
pub fn nested(s: &IntSeries) -> Value {
    fn go(s: &IntSeries, prefix: &mut Vec<u32>) -> Value {
        let bounds = s.window().bounds().parts();
        let j = prefix.len();
        if j == bounds.len() {
            return Value::from(s.at(prefix));
        }
        let items = (0..=bounds[j])
            .map(|d| {
                prefix.push(d);
                let v = go(s, prefix);
                prefix.pop();
                v
            })
            .collect();
        Value::Array(items)
    }
    go(s, &mut Vec::new())
}

#[derive(Serialize)]
struct Mismatch {
    at: Vec<u32>,
    actual: i64,
    conjectured: i64,
}

impl From<&Violation> for Mismatch {
    fn from(v: &Violation) -> Self {
        Mismatch { at: v.at.parts().to_vec(), actual: v.left, conjectured: v.right }
    }
}

#[derive(Serialize)]
struct Envelope<'a, P: Serialize, B: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: CommandKind,
    parameters: &'a P,
    #[serde(flatten)]
    body: B,
}

#[derive(Serialize)]
struct SeedDoc {
    seed: u64,
    matches: bool,
    first_difference: Option<Mismatch>,
    actual: Value,
}

#[derive(Serialize)]
struct VerifyDoc {
    #[serde(rename = "match")]
    matched: bool,
    first_mismatch: Option<Mismatch>,
    conjectured: Value,
    runs: Vec<SeedDoc>,
    minimum_label: &'static str,
    minimum: Value,
    diagonal: Vec<i64>,
    diagonal_stable_from: Option<u32>,
}

fn verify_doc(v: &VerifyReport) -> VerifyDoc {
    VerifyDoc {
        matched: v.matched,
        first_mismatch: v.first_mismatch.as_ref().map(Mismatch::from),
        conjectured: nested(&v.conjectured),
        runs: v
            .runs
            .iter()
            .map(|r| SeedDoc {
                seed: r.seed,
                matches: r.matches(),
                first_difference: r.first_difference.as_ref().map(Mismatch::from),
                actual: nested(&r.actual),
            })
            .collect(),
        minimum_label: MINIMUM_LABEL,
        minimum: nested(&v.minimum),
        diagonal: v.diagonal.clone(),
        diagonal_stable_from: v.diagonal_stable_from,
    }
}

const MINIMUM_LABEL: &str = "pointwise minimum over seeds, an upper estimate of the generic series";

fn json_document(report: &Report) -> Value {
    fn envelope<P: Serialize, B: Serialize>(kind: CommandKind, params: &P, body: B) -> Value {
        serde_json::to_value(Envelope { tool: TOOL, version: VERSION, command: kind, parameters: params, body })
            .expect("reports serialize")
    }
    let kind = report.kind();
    match report {
        Report::Conjecture(c) => {
            #[derive(Serialize)]
            struct Doc {
                truncation_frontier: Vec<Vec<u32>>,
                raw: Value,
                conjectured: Value,
            }
            let frontier = truncation_frontier(&c.conjectured).iter().map(|t| t.parts().to_vec()).collect();
            envelope(kind, &c.params, Doc { truncation_frontier: frontier, raw: nested(&c.raw), conjectured: nested(&c.conjectured) })
        }
        Report::Hilbert(h) => {
            #[derive(Serialize)]
            struct Doc {
                seed: Option<u64>,
                matches: bool,
                first_difference: Option<Mismatch>,
                actual: Value,
                conjectured: Value,
            }
            let seed = (!matches!(h.params.source, GenSource::File { .. })).then(|| h.result.spec.seed());
            envelope(
                kind,
                &h.params,
                Doc {
                    seed,
                    matches: h.result.matches(),
                    first_difference: h.result.first_difference.as_ref().map(Mismatch::from),
                    actual: nested(&h.result.actual),
                    conjectured: nested(&h.result.conjectured),
                },
            )
        }
        Report::Verify(params, v) => envelope(kind, params, verify_doc(v)),
        Report::Scan(s) => {
            #[derive(Serialize)]
            struct Entry {
                case: &'static str,
                r: usize,
                shape: Vec<u32>,
                degrees: String,
                #[serde(rename = "box")]
                window: Vec<u32>,
                expected: &'static str,
                verdict: &'static str,
                seeds_matching: usize,
                first_mismatch: Option<Mismatch>,
            }
            #[derive(Serialize)]
            struct Doc {
                deviations: usize,
                entries: Vec<Entry>,
            }
            let entries = s
                .entries
                .iter()
                .map(|e| Entry {
                    case: e.preset.case,
                    r: e.preset.degrees.len(),
                    shape: e.preset.shape.dims().to_vec(),
                    degrees: format_degrees(&e.preset.degrees),
                    window: e.report.params.window.bounds().parts().to_vec(),
                    expected: if e.preset.expect_match { "match" } else { "mismatch" },
                    verdict: e.verdict(),
                    seeds_matching: e.report.runs.iter().filter(|r| r.matches()).count(),
                    first_mismatch: e.report.first_mismatch.as_ref().map(Mismatch::from),
                })
                .collect();
            envelope(kind, &s.params, Doc { deviations: s.deviations(), entries })
        }
        Report::Explore(x) => {
            #[derive(Serialize)]
            struct Step {
                r: usize,
                degrees: String,
                #[serde(flatten)]
                verify: VerifyDoc,
            }
            #[derive(Serialize)]
            struct Doc {
                label: Option<String>,
                steps: Vec<Step>,
            }
            let steps = x
                .steps
                .iter()
                .map(|s| Step { r: s.r, degrees: format_degrees(&s.report.params.degrees), verify: verify_doc(&s.report) })
                .collect();
            envelope(kind, &x.params, Doc { label: x.label.clone(), steps })
        }
    }
}

fn kind_name(kind: CommandKind) -> &'static str {
    match kind {
        CommandKind::Conjecture => "conjecture",
        CommandKind::Hilbert => "hilbert",
        CommandKind::Verify => "verify",
        CommandKind::Scan => "scan",
        CommandKind::Explore => "explore",
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn source_name(source: &GenSource) -> String {
    match source {
        GenSource::Random => "random".into(),
        GenSource::Powers => "powers".into(),
        GenSource::File { path, .. } => format!("file:{path}"),
    }
}

/// `key=value` lines describing the run; CSV prefixes them with `# `.
fn parameter_lines(report: &Report) -> Vec<String> {
    let mut lines = vec![format!("{TOOL} {VERSION} {}", kind_name(report.kind()))];
    let params = match report {
        Report::Conjecture(c) => &c.params,
        Report::Hilbert(h) => &h.params,
        Report::Verify(p, _) => p,
        Report::Explore(x) => &x.params,
        Report::Scan(s) => {
            lines.push(format!("prime={}", s.params.prime.modulus()));
            lines.push(format!("seeds={}", join(&s.params.seeds, ";")));
            return lines;
        }
    };
    lines.push(format!("shape={}", join(params.shape.dims(), ",")));
    lines.push(format!("degrees={}", params.degrees));
    lines.push(format!("box={}", join(params.window.bounds().parts(), ",")));
    lines.push(format!("prime={}", params.prime.modulus()));
    if !params.seeds.is_empty() {
        lines.push(format!("seeds={}", join(&params.seeds, ";")));
    }
    lines.push(format!("gen={}", source_name(&params.source)));
    lines
}

fn csv_table(header: &[String], series: &[&IntSeries], out: &mut String) {
    let first = series[0];
    let arity = first.shape().arity();
    let mut cols: Vec<String> = (1..=arity).map(|j| format!("t{j}")).collect();
    cols.extend(header.iter().cloned());
    let _ = writeln!(out, "{}", cols.join(","));
    for (i, t) in first.window().points().enumerate() {
        let mut row: Vec<String> = t.parts().iter().map(u32::to_string).collect();
        row.extend(series.iter().map(|s| s.coeffs()[i].to_string()));
        let _ = writeln!(out, "{}", row.join(","));
    }
}

fn verify_columns(v: &VerifyReport) -> (Vec<String>, Vec<&IntSeries>) {
    let mut header = vec!["conjectured".to_string()];
    header.extend(v.runs.iter().map(|r| format!("seed_{}", r.seed)));
    header.push("minimum".into());
    let mut series = vec![&v.conjectured];
    series.extend(v.runs.iter().map(|r| &r.actual));
    series.push(&v.minimum);
    (header, series)
}

fn csv(report: &Report) -> String {
    let mut out = String::new();
    for line in parameter_lines(report) {
        let _ = writeln!(out, "# {line}");
    }
    match report {
        Report::Conjecture(c) => csv_table(&["raw".into(), "conjectured".into()], &[&c.raw, &c.conjectured], &mut out),
        Report::Hilbert(h) => {
            csv_table(&["actual".into(), "conjectured".into()], &[&h.result.actual, &h.result.conjectured], &mut out)
        }
        Report::Verify(_, v) => {
            let (header, series) = verify_columns(v);
            csv_table(&header, &series, &mut out);
        }
        Report::Explore(x) => {
            let arity = x.params.shape.arity();
            let mut cols = vec!["r".to_string()];
            cols.extend((1..=arity).map(|j| format!("t{j}")));
            cols.extend(["minimum".to_string(), "conjectured".to_string()]);
            let _ = writeln!(out, "{}", cols.join(","));
            for step in &x.steps {
                let v = &step.report;
                for ((t, m), c) in v.minimum.iter().zip(v.conjectured.coeffs()) {
                    let _ = writeln!(out, "{},{},{m},{c}", step.r, join(t.parts(), ","));
                }
            }
        }
        Report::Scan(s) => {
            let _ = writeln!(out, "case,r,shape,degrees,box,expected,verdict");
            for e in &s.entries {
                let _ = writeln!(
                    out,
                    "{},{},\"{}\",\"{}\",\"{}\",{},{}",
                    e.preset.case,
                    e.preset.degrees.len(),
                    join(e.preset.shape.dims(), ","),
                    format_degrees(&e.preset.degrees),
                    join(e.report.params.window.bounds().parts(), ","),
                    if e.preset.expect_match { "match" } else { "mismatch" },
                    e.verdict()
                );
            }
        }
    }
    out
}

fn describe(v: &Option<Violation>) -> String {
    match v {
        None => "none".into(),
        Some(v) => format!("at {}: actual {} vs conjectured {}", v.at, v.left, v.right),
    }
}

fn verify_table(v: &VerifyReport, out: &mut String) {
    let _ = writeln!(out, "conjectured:\n{}", v.conjectured.render_grid());
    for r in &v.runs {
        let status = if r.matches() { "match".to_string() } else { format!("differs {}", describe(&r.first_difference)) };
        let _ = writeln!(out, "seed {}: {status}\n{}", r.seed, r.actual.render_grid());
    }
    let _ = writeln!(out, "minimum over seeds ({MINIMUM_LABEL}):\n{}", v.minimum.render_grid());
    let _ = writeln!(out, "diagonal: {}", join(&v.diagonal, " "));
    match v.diagonal_stable_from {
        Some(d) => {
            let _ = writeln!(out, "diagonal constant from d = {d}");
        }
        None => {
            let _ = writeln!(out, "diagonal not yet constant inside the box");
        }
    }
    let _ = writeln!(out, "first mismatch: {}", describe(&v.first_mismatch));
    let _ = writeln!(out, "verdict: {}", if v.matched { "MATCH" } else { "MISMATCH" });
}

fn table(report: &Report) -> String {
    let mut out = String::new();
    for line in parameter_lines(report) {
        let _ = writeln!(out, "{line}");
    }
    out.push('\n');
    match report {
        Report::Conjecture(c) => {
            let _ = writeln!(out, "product expansion before truncation:\n{}", c.raw.render_grid());
            let _ = writeln!(out, "conjectured series:\n{}", c.conjectured.render_grid());
            let frontier: Vec<String> = truncation_frontier(&c.conjectured).iter().map(|t| t.to_string()).collect();
            let _ = writeln!(out, "truncation frontier: {}", if frontier.is_empty() { "none in box".into() } else { frontier.join(" ") });
        }
        Report::Hilbert(h) => {
            let _ = writeln!(out, "Hilbert function:\n{}", h.result.actual.render_grid());
            let _ = writeln!(out, "conjectured series:\n{}", h.result.conjectured.render_grid());
            let _ = writeln!(out, "first difference: {}", describe(&h.result.first_difference));
        }
        Report::Verify(_, v) => verify_table(v, &mut out),
        Report::Explore(x) => {
            if let Some(label) = &x.label {
                let _ = writeln!(out, "{label}\n");
            }
            for step in &x.steps {
                let v = &step.report;
                let _ = writeln!(
                    out,
                    "r = {} ({}): {} ; first mismatch {}",
                    step.r,
                    format_degrees(&v.params.degrees),
                    if v.matched { "product formula attained" } else { "differs from product formula" },
                    describe(&v.first_mismatch)
                );
                let _ = writeln!(out, "minimum over seeds:\n{}", v.minimum.render_grid());
            }
        }
        Report::Scan(s) => {
            let rows: Vec<[String; 6]> = s
                .entries
                .iter()
                .map(|e| {
                    [
                        e.preset.case.to_string(),
                        e.preset.degrees.len().to_string(),
                        format_degrees(&e.preset.degrees),
                        e.report.params.window.bounds().to_string(),
                        format!("{}/{}", e.report.runs.iter().filter(|r| r.matches()).count(), e.report.runs.len()),
                        e.verdict().to_string(),
                    ]
                })
                .collect();
            let header = ["case", "r", "degrees", "box", "seeds", "verdict"].map(String::from);
            let mut widths = header.clone().map(|h| h.len());
            for row in &rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.len());
                }
            }
            for row in std::iter::once(&header).chain(&rows) {
                let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
                let _ = writeln!(out, "{}", cells.join("  ").trim_end());
            }
            let _ = writeln!(out, "\ndeviations: {}", s.deviations());
        }
    }
    out
}
