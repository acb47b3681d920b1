//! Command-line front end: reads query documents, evaluates them and writes
//! reports. Exit codes: 0 success, 1 malformed input, 2 failed hypothesis,
//! 3 inconsistent bounds.

mod document;
mod render;

pub use document::{
    describe, ConflictDocument, ErrorDocument, GroupDocument, HomDocument, JsonInt, OneOrMany,
    Options, OracleBound, OracleSection, OracleStatus, PresentationDocument, QueryDocument,
    ReportDocument, ResultEntry, SCHEMA_VERSION,
};
pub use render::render_text;

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use crate::cuplength::cuplength_lower_bound;
use crate::error::{Error, Result};
use crate::invariants::{compute, HomSpec, InvariantKind, Query};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InvariantArg {
    Cat,
    Cd,
    #[value(name = "tc_r")]
    TcR,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    Cuplength,
}

/// Computes cat, cd and TC_r of group homomorphisms.
#[derive(Debug, Clone, Parser)]
#[command(name = "tcrlab", version)]
pub struct Args {
    /// Query document; standard input when absent.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Sequential parameters, overriding the document.
    #[arg(long, value_delimiter = ',')]
    pub r: Vec<u32>,
    /// Invariant to compute, overriding the document.
    #[arg(long, value_enum)]
    pub invariant: Option<InvariantArg>,
    /// Show derivation traces in text output.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Use propagation rules only.
    #[arg(long)]
    pub disable_closed_forms: bool,
    /// Run a cross-checking oracle.
    #[arg(long, value_enum)]
    pub oracle: Option<OracleArg>,
    /// Input is a JSON array or JSON Lines of query documents.
    #[arg(long)]
    pub batch: bool,
}

/// Applies command-line overrides to a parsed document.
fn apply_overrides(doc: &mut QueryDocument, args: &Args) {
    if !args.r.is_empty() {
        doc.r = Some(OneOrMany::Many(args.r.clone()));
    }
    match args.invariant {
        None => {}
        Some(InvariantArg::All) => doc.invariants = Some(InvariantKind::ALL.to_vec()),
        Some(InvariantArg::Cat) => doc.invariants = Some(vec![InvariantKind::Cat]),
        Some(InvariantArg::Cd) => doc.invariants = Some(vec![InvariantKind::Cd]),
        Some(InvariantArg::TcR) => doc.invariants = Some(vec![InvariantKind::TcR]),
    }
    doc.options.disable_closed_forms |= args.disable_closed_forms;
    doc.options.run_oracle |= args.oracle.is_some();
}

fn oracle_section(spec: &HomSpec, rs: &[u32]) -> OracleSection {
    let section = |status, detail: &str| OracleSection {
        name: "cuplength".to_string(),
        status,
        detail: Some(detail.to_string()),
        bounds: Vec::new(),
    };
    let HomSpec::Abelian(h) = spec else {
        return section(
            OracleStatus::NotApplicable,
            "the cup-length oracle covers homomorphisms of free abelian groups",
        );
    };
    if !h.source().is_torsion_free() || !h.target().is_torsion_free() {
        return section(
            OracleStatus::NotApplicable,
            "source and target must be torsion-free",
        );
    }
    let mut bounds = Vec::new();
    for &r in rs {
        match cuplength_lower_bound(h.matrix(), r as usize) {
            Ok(b) => bounds.push(OracleBound {
                r,
                lower_bound: b.value as u64,
                certificate_terms: b.certificate.terms().len(),
                certificate_degree: b.certificate.degree().unwrap_or(0),
            }),
            Err(e) => return section(OracleStatus::Refused, &e.to_string()),
        }
    }
    OracleSection {
        name: "cuplength".to_string(),
        status: OracleStatus::Computed,
        detail: None,
        bounds,
    }
}

/// Evaluates a parsed document. Any failing `(invariant, r)` turns the
/// whole report into an error report.
pub fn evaluate_document(doc: &QueryDocument) -> ReportDocument {
    let spec = match doc.hom.to_spec() {
        Ok(s) => s,
        Err(e) => return ReportDocument::failure(None, &e),
    };
    let hom = Some(describe(&spec));
    match evaluate_spec(doc, &spec) {
        Ok(report) => report,
        Err(e) => ReportDocument::failure(hom, &e),
    }
}

fn evaluate_spec(doc: &QueryDocument, spec: &HomSpec) -> Result<ReportDocument> {
    let rs = doc.r.as_ref().map_or_else(|| vec![2], OneOrMany::values);
    if rs.is_empty() {
        return Err(Error::input("r list is empty"));
    }
    let invariants = doc
        .invariants
        .clone()
        .unwrap_or_else(|| InvariantKind::ALL.to_vec());
    if invariants.is_empty() {
        return Err(Error::input("invariants list is empty"));
    }
    let mut results = Vec::new();
    for &r in &rs {
        for &invariant in &invariants {
            let q = Query {
                hom: spec.clone(),
                r,
                invariant,
                user_facts: doc.user_facts.clone(),
                disable_closed_forms: doc.options.disable_closed_forms,
            };
            let report = compute(&q)?;
            results.push(ResultEntry {
                invariant,
                r,
                value: report.value,
                trace: report.trace,
                hypotheses: report.hypotheses_verified,
                branches: report.branches,
            });
        }
    }
    Ok(ReportDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        hom: Some(describe(spec)),
        results,
        oracle: doc.options.run_oracle.then(|| oracle_section(spec, &rs)),
        error: None,
    })
}

fn evaluate_text(text: &str, args: &Args) -> ReportDocument {
    match QueryDocument::parse(text) {
        Ok(mut doc) => {
            apply_overrides(&mut doc, args);
            evaluate_document(&doc)
        }
        Err(e) => ReportDocument::failure(None, &e),
    }
}

fn evaluate_value(value: serde_json::Value, args: &Args) -> ReportDocument {
    match QueryDocument::from_value(value) {
        Ok(mut doc) => {
            apply_overrides(&mut doc, args);
            evaluate_document(&doc)
        }
        Err(e) => ReportDocument::failure(None, &e),
    }
}

/// Splits batch input into entries: a JSON array, or one document per
/// non-blank line. A line that is not valid JSON stays a failing entry.
fn batch_entries(
    input: &str,
) -> std::result::Result<Vec<std::result::Result<serde_json::Value, Error>>, Error> {
    let trimmed = input.trim_start();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    if trimmed.starts_with('[') {
        let values: Vec<serde_json::Value> =
            serde_json::from_str(input).map_err(|e| Error::input(format!("batch array: {e}")))?;
        return Ok(values.into_iter().map(Ok).collect());
    }
    Ok(input
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| Error::input(e.to_string())))
        .collect())
}

fn error_line(e: &ErrorDocument) -> String {
    serde_json::to_string(e).expect("error document serializes")
}

fn write_report(
    out: &mut dyn Write,
    report: &ReportDocument,
    args: &Args,
    pretty: bool,
) -> std::io::Result<()> {
    match args.format {
        Format::Json if pretty => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(report).expect("serializable")
        ),
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(report).expect("serializable")
        ),
        Format::Text => write!(out, "{}", render_text(report, args.trace, color_enabled())),
    }
}

fn color_enabled() -> bool {
    std::env::var("TCRLAB_COLOR").is_ok_and(|v| !v.is_empty() && v != "0")
}

/// Runs the tool on explicit streams and returns the exit code.
pub fn run<I, T>(
    argv: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let doc = ErrorDocument::from(&Error::input(
                e.to_string().lines().next().unwrap_or("bad arguments"),
            ));
            let _ = writeln!(stderr, "{}", error_line(&doc));
            return 1;
        }
    };
    let input = match read_input(&args, stdin) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_line(&ErrorDocument::from(&e)));
            return 1;
        }
    };
    if args.batch {
        run_batch(&args, &input, stdout, stderr)
    } else {
        let report = evaluate_text(&input, &args);
        if let Some(e) = &report.error {
            let _ = writeln!(stderr, "{}", error_line(e));
        }
        let _ = write_report(stdout, &report, &args, true);
        report.exit_code()
    }
}

fn read_input(args: &Args, stdin: &mut dyn Read) -> Result<String> {
    match &args.input {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("{}: {e}", path.display()))),
        None => {
            let mut s = String::new();
            stdin
                .read_to_string(&mut s)
                .map_err(|e| Error::input(format!("standard input: {e}")))?;
            Ok(s)
        }
    }
}

/// Evaluates a sequence of documents concurrently; reports come out in
/// input order and the exit code is the largest per-entry code.
fn run_batch(args: &Args, input: &str, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let entries = match batch_entries(input) {
        Ok(e) => e,
        Err(e) => {
            let _ = writeln!(stderr, "{}", error_line(&ErrorDocument::from(&e)));
            return 1;
        }
    };
    let reports: Vec<ReportDocument> = entries
        .into_par_iter()
        .map(|entry| match entry {
            Ok(v) => evaluate_value(v, args),
            Err(e) => ReportDocument::failure(None, &e),
        })
        .collect();
    let mut code = 0;
    for (i, report) in reports.iter().enumerate() {
        if let Some(e) = &report.error {
            let mut line = serde_json::to_value(e).expect("serializable");
            line["index"] = i.into();
            let _ = writeln!(stderr, "{line}");
            code = code.max(e.code);
        }
        let _ = write_report(stdout, report, args, false);
    }
    code
}

/// Entry point for the binary.
pub fn main_with_env() -> i32 {
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os(),
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}
