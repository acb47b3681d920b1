use std::fmt::Write;

use super::document::{OracleStatus, ReportDocument};
use crate::invariants::InvariantKind;

fn style(text: &str, code: &str, color: bool) -> String {
    if color {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

fn label(invariant: InvariantKind, r: u32) -> String {
    match invariant {
        InvariantKind::Cat => "cat".to_string(),
        InvariantKind::Cd => "cd".to_string(),
        InvariantKind::TcR => format!("TC_{r}"),
    }
}

/// Human-readable report. Citations are printed verbatim.
pub fn render_text(report: &ReportDocument, trace: bool, color: bool) -> String {
    let mut out = String::new();
    if let Some(hom) = &report.hom {
        let _ = writeln!(out, "hom: {hom}");
    }
    if let Some(e) = &report.error {
        let _ = writeln!(
            out,
            "{}: {}",
            style(&format!("error ({})", e.kind), "31", color),
            e.message
        );
        return out;
    }
    for res in &report.results {
        let value = style(&res.value.to_string(), "1", color);
        let _ = write!(out, "{} = {value}", label(res.invariant, res.r));
        if let Some(last) = res.trace.last() {
            let _ = write!(out, "  ({})", last.citation);
        }
        out.push('\n');
        for b in &res.branches {
            let _ = writeln!(out, "  if {}: {}", b.assumption, b.value);
        }
        if !res.hypotheses.is_empty() {
            let hyps: Vec<String> = res
                .hypotheses
                .iter()
                .map(|(k, v)| {
                    format!(
                        "{k}={}",
                        serde_json::to_value(v)
                            .expect("serializable")
                            .as_str()
                            .unwrap_or("?")
                    )
                })
                .collect();
            let _ = writeln!(out, "  hypotheses: {}", hyps.join(", "));
        }
        if trace {
            for (i, step) in res.trace.iter().enumerate() {
                let _ = writeln!(out, "  {}", step.summary(i, res.r));
            }
        }
    }
    if let Some(o) = &report.oracle {
        let status = match o.status {
            OracleStatus::Computed => "computed",
            OracleStatus::NotApplicable => "not applicable",
            OracleStatus::Refused => "refused",
        };
        let _ = write!(out, "oracle {}: {status}", o.name);
        if let Some(d) = &o.detail {
            let _ = write!(out, " ({d})");
        }
        out.push('\n');
        for b in &o.bounds {
            let _ = writeln!(
                out,
                "  r = {}: TC_{} >= {} (certificate of degree {}, {} terms)",
                b.r, b.r, b.lower_bound, b.certificate_degree, b.certificate_terms
            );
        }
    }
    out
}
