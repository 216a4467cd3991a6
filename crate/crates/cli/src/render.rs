use std::fmt::Write;

use decrement::checker::{CheckReport, ConformanceMatrix, RepresentationReport};
use decrement::{Signature, TotalPreorder};

/// Layer table with the highest layer on top and layer 0 last.
pub fn layer_table(signature: &Signature, order: &TotalPreorder) -> String {
    let layers = order.to_layers();
    let width = layers.len().saturating_sub(1).to_string().len();
    let mut out = String::new();
    for (rank, layer) in layers.0.iter().enumerate().rev() {
        let worlds = layer.bitstrings(signature.len()).join(" ");
        let _ = writeln!(out, "  layer {rank:>width$} | {worlds}");
    }
    out
}

pub fn report_line(r: &CheckReport) -> String {
    let mut line = format!(
        "{:<8} {:<17} {:<4} cases={} violations={}",
        r.operator, r.postulate, r.outcome, r.cases, r.violations
    );
    if let Some(cx) = r.counterexamples.first() {
        let _ = write!(line, "  first: state={:?}", cx.state);
        if !cx.formulas.is_empty() {
            let _ = write!(line, " formulas={:?}", cx.formulas);
        }
        if !cx.worlds.is_empty() {
            let _ = write!(line, " worlds={:?}", cx.worlds);
        }
    }
    line
}

pub fn matrix_summary(m: &ConformanceMatrix) -> String {
    let failed = m.reports.iter().filter(|r| !r.passed()).count();
    let mut out = String::new();
    for r in &m.reports {
        let _ = writeln!(out, "{}", report_line(r));
    }
    let _ = writeln!(out, "{} cells, {} failing", m.reports.len(), failed);
    out
}

pub fn representation_summary(r: &RepresentationReport) -> String {
    let mut out = format!("{} {}: {}\n", r.operator, r.domain, r.outcome);
    for c in &r.conditions {
        let _ = writeln!(
            out,
            "  {:<17} {:<4} cases={} violations={}",
            c.condition, c.outcome, c.cases, c.violations
        );
    }
    out
}
