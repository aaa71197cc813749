use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

use super::analysis::{
    AnalysisReport, Certificate, ChernSummary, LocalFreeness, Route, RouteOutcome, Verdict,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Serialize)]
struct EntryJson<'a> {
    name: &'a str,
    rank: u64,
    n: Vec<i64>,
    m: Vec<i64>,
    chern: ChernSummary,
    route: Route,
    verdict: Verdict,
    locally_free: LocalFreeness,
    certificates: &'a [Certificate],
    assumptions: &'a [String],
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<&'a str>,
    #[serde(skip_serializing_if = "<[_]>::is_empty")]
    alternative_routes: &'a [RouteOutcome],
}

#[derive(Serialize)]
struct DocumentJson<'a> {
    entries: Vec<EntryJson<'a>>,
}

fn to_json(reports: &[AnalysisReport]) -> Result<String> {
    let doc = DocumentJson {
        entries: reports
            .iter()
            .map(|r| EntryJson {
                name: r.entry.name(),
                rank: r.entry.rank(),
                n: r.entry.n_twists().expanded(),
                m: r.entry.m_twists().expanded(),
                chern: r.chern,
                route: r.route(),
                verdict: r.verdict(),
                locally_free: r.local_freeness,
                certificates: r.certificates(),
                assumptions: r.assumptions(),
                reason: r.outcome.reason.as_deref(),
                alternative_routes: &r.alternatives,
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc)
        .map_err(|e| Error::InvalidArgument(format!("json encoding: {e}")))?;
    out.push('\n');
    Ok(out)
}

fn describe(cert: &Certificate) -> Vec<String> {
    match cert {
        Certificate::LocalFreeness {
            ambient,
            source_rank,
            target_rank,
            hom_globally_generated,
            result,
        } => vec![format!(
            "local freeness on {ambient}: e = {source_rank}, f = {target_rank}, f - e + 1 = {} vs dim {}, Hom globally generated: {hom_globally_generated} => {}",
            target_rank - source_rank + 1,
            ambient.dim(),
            if result.is_certified() { "locally free" } else { "not certified" }
        )],
        Certificate::ExteriorPowerVanishing {
            ambient,
            q,
            normalization_twist,
            resolution,
            facts,
        } => {
            let mut lines = vec![format!(
                "H^0({ambient}, {}) = 0 (normalization twist {normalization_twist}) from {resolution}",
                resolution.label()
            )];
            lines.extend(facts.iter().map(|f| format!("  q={q}: {f}")));
            lines
        }
        Certificate::Restriction { n, d, rank, result } => vec![format!(
            "restriction to degree {d} hypersurface in P^{n}, rank {rank}: {result} => {}",
            if result.applies() { "semistability restricts" } else { "does not apply" }
        )],
        Certificate::PlaneResolutionShape { shape } => vec![format!(
            "plane resolution shape {:?}, k = {}, (a, b, c) = ({}, {}, {}): {shape}",
            shape.form, shape.k, shape.a, shape.b, shape.c
        )],
        Certificate::PlaneModuliNonempty { rank, c2, nonempty } => vec![format!(
            "stable plane bundle with r = {rank}, c1 = 0, c2 = {c2} exists: {nonempty}"
        )],
    }
}

fn write_outcome(out: &mut String, outcome: &RouteOutcome, indent: &str) {
    for cert in &outcome.certificates {
        for line in describe(cert) {
            let _ = writeln!(out, "{indent}{line}");
        }
    }
    if let Some(reason) = &outcome.reason {
        let _ = writeln!(out, "{indent}stopped: {reason}");
    }
    for a in &outcome.assumptions {
        let _ = writeln!(out, "{indent}assumes: {a}");
    }
}

fn to_text(reports: &[AnalysisReport], verbose: bool) -> String {
    let header = ["name", "rank", "c1", "c2", "c3", "route", "verdict"];
    let rows: Vec<[String; 7]> = reports
        .iter()
        .map(|r| {
            [
                r.entry.name().to_string(),
                r.entry.rank().to_string(),
                r.chern.c1.to_string(),
                r.chern.c2.to_string(),
                r.chern.c3.to_string(),
                r.route().as_str().to_string(),
                r.verdict().as_str().to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |cells: &[&str]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{}", line(&header));
    for (row, report) in rows.iter().zip(reports) {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        let _ = writeln!(out, "{}", line(&cells));
        if verbose {
            write_outcome(&mut out, &report.outcome, "    ");
            for alt in &report.alternatives {
                let _ = writeln!(
                    out,
                    "    alternative {}: {}",
                    alt.route.as_str(),
                    alt.verdict.as_str()
                );
                write_outcome(&mut out, alt, "      ");
            }
        }
    }
    out
}

/// Renders reports. Text is an aligned summary table (plus certificate chains
/// when `verbose`); JSON always carries the full chains and is deterministic.
pub fn emit_report(
    reports: &[AnalysisReport],
    format: ReportFormat,
    verbose: bool,
) -> Result<String> {
    match format {
        ReportFormat::Text => Ok(to_text(reports, verbose)),
        ReportFormat::Json => to_json(reports),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::analysis::analyze_entry;
    use crate::pipeline::table::builtin_entry;

    #[test]
    fn empty_json() {
        let out = emit_report(&[], ReportFormat::Json, false).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v, serde_json::json!({ "entries": [] }));
    }

    #[test]
    fn v8_json_fields() {
        let r = analyze_entry(&builtin_entry("V8").unwrap()).unwrap();
        let out = emit_report(&[r], ReportFormat::Json, false).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let e = &v["entries"][0];
        assert_eq!(e["name"], "V8");
        assert_eq!(e["verdict"], "semistable_on_quintic");
        assert_eq!(e["route"], "rank4_ambient_hoppe_plus_flenner");
        assert_eq!(e["n"], serde_json::json!([1, 1, 1, 1, 2, 2]));
        assert_eq!(e["chern"]["c2"], 10);
        assert_eq!(
            e["locally_free"],
            serde_json::json!({ "p4": true, "quintic": true })
        );
        let qs: Vec<u64> = e["certificates"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["kind"] == "exterior_power_vanishing")
            .map(|c| c["q"].as_u64().unwrap())
            .collect();
        assert_eq!(qs, vec![1, 2, 3]);
        let flenner = e["certificates"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["kind"] == "restriction")
            .unwrap();
        assert_eq!(flenner["result"]["rhs"], "75/4");
        // Top-level entry keys come out in schema order.
        let positions: Vec<usize> = [
            "name",
            "rank",
            "n",
            "m",
            "chern",
            "route",
            "verdict",
            "locally_free",
            "certificates",
            "assumptions",
        ]
        .iter()
        .map(|k| {
            out.find(&format!("\n      \"{k}\":"))
                .unwrap_or_else(|| panic!("{k}"))
        })
        .collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]), "{positions:?}");
    }

    #[test]
    fn text_table_is_aligned() {
        let reports: Vec<_> = ["V1", "V10", "V13"]
            .iter()
            .map(|n| analyze_entry(&builtin_entry(n).unwrap()).unwrap())
            .collect();
        let out = emit_report(&reports, ReportFormat::Text, false).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 4);
        let col = lines[0].find("verdict").unwrap();
        for l in &lines[1..] {
            assert!(
                l[col..].starts_with(|c: char| c.is_ascii_lowercase()),
                "{l}"
            );
        }
        assert!(lines[3].ends_with("inconclusive"));
    }

    #[test]
    fn verbose_text_lists_vanishing_facts() {
        let r = analyze_entry(&builtin_entry("V8").unwrap()).unwrap();
        let out = emit_report(&[r], ReportFormat::Text, true).unwrap();
        assert!(out.contains("q=3: h^3(F_3) = 0, F_3 = O(-12)^4"), "{out}");
        assert!(out.contains("assumes:"));
    }
}
