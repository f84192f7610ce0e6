//! Report model, rendering (text, JSON, CSV), and parsing back for
//! evaluation.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rules::{Evidence, Violation};

/// Report schema version; bumped only on breaking shape changes.
pub const REPORT_VERSION: &str = "1";

/// Output format for the analyze command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Format, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format '{other}' (expected text, json, or csv)")),
        }
    }
}

/// An input file that was loaded but not analyzed, and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedInput {
    pub path: String,
    pub reason: String,
}

/// Which input files the run analyzed and which it skipped.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputsManifest {
    pub analyzed: Vec<String>,
    pub skipped: Vec<SkippedInput>,
}

/// One analysis run's complete result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub version: String,
    pub tool_version: String,
    pub inputs: InputsManifest,
    /// Violation counts per rule id; rules with zero hits are omitted.
    pub summary: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    /// Wall-clock duration; omitted under `--deterministic`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl AnalysisReport {
    pub fn new(
        inputs: InputsManifest,
        violations: Vec<Violation>,
        elapsed_ms: Option<u64>,
    ) -> AnalysisReport {
        let mut summary: BTreeMap<String, usize> = BTreeMap::new();
        for v in &violations {
            *summary.entry(v.rule_id.id().to_string()).or_insert(0) += 1;
        }
        AnalysisReport {
            version: REPORT_VERSION.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs,
            summary,
            violations,
            elapsed_ms,
        }
    }
}

/// Renders a report in the requested format. Output is a deterministic
/// function of the report contents.
pub fn render(report: &AnalysisReport, format: Format) -> String {
    match format {
        Format::Text => render_text(report),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(&report.violations),
    }
}

fn render_text(report: &AnalysisReport) -> String {
    let mut out = String::new();
    for v in &report.violations {
        let _ = writeln!(
            out,
            "{}:{}:{}: [{}] {} '{}': {}. {}",
            v.file,
            v.line,
            v.column,
            v.rule_id,
            v.entity_kind.as_str(),
            v.identifier,
            v.rule_name,
            v.recommendation
        );
    }
    if !report.violations.is_empty() {
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "{} file{} analyzed, {} skipped: {} violation{}",
        report.inputs.analyzed.len(),
        plural(report.inputs.analyzed.len()),
        report.inputs.skipped.len(),
        report.violations.len(),
        plural(report.violations.len())
    );
    for (rule, count) in &report.summary {
        let _ = writeln!(out, "  {rule}: {count}");
    }
    for s in &report.inputs.skipped {
        let _ = writeln!(out, "  skipped {}: {}", s.path, s.reason);
    }
    if let Some(ms) = report.elapsed_ms {
        let _ = writeln!(out, "elapsed: {ms} ms");
    }
    out
}

fn plural(n: usize) -> &'static str {
    if n == 1 {
        ""
    } else {
        "s"
    }
}

const CSV_HEADER: [&str; 10] = [
    "rule_id",
    "rule_name",
    "entity_kind",
    "identifier",
    "file",
    "line",
    "column",
    "type",
    "evidence",
    "recommendation",
];

fn render_csv(violations: &[Violation]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("csv header");
    for v in violations {
        w.write_record([
            v.rule_id.id(),
            &v.rule_name,
            v.entity_kind.as_str(),
            &v.identifier,
            &v.file,
            &v.line.to_string(),
            &v.column.to_string(),
            &v.type_text,
            &serde_json::to_string(&v.evidence).expect("evidence serializes"),
            &v.recommendation,
        ])
        .expect("csv row");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv is utf-8")
}

/// Parses a JSON report produced by [`render`].
pub fn parse_report_json(text: &str) -> Result<AnalysisReport, String> {
    let report: AnalysisReport =
        serde_json::from_str(text).map_err(|e| format!("not a JSON report: {e}"))?;
    if report.version != REPORT_VERSION {
        return Err(format!(
            "unsupported report version '{}' (this build reads version {REPORT_VERSION})",
            report.version
        ));
    }
    Ok(report)
}

/// Parses the violations table of a CSV report produced by [`render`].
pub fn parse_violations_csv(text: &str) -> Result<Vec<Violation>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    {
        let headers = reader.headers().map_err(|e| format!("not a CSV report: {e}"))?;
        let got: Vec<&str> = headers.iter().collect();
        if got != CSV_HEADER {
            return Err(format!("not a CSV report: header is {got:?}, expected {CSV_HEADER:?}"));
        }
    }
    let mut out = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2; // header is row 1
        let record = record.map_err(|e| format!("CSV row {row}: {e}"))?;
        let field = |idx: usize| record.get(idx).unwrap_or("").to_string();
        let evidence: Evidence = serde_json::from_str(record.get(8).unwrap_or("{}"))
            .map_err(|e| format!("CSV row {row}: bad evidence: {e}"))?;
        out.push(Violation {
            rule_id: field(0).parse().map_err(|e| format!("CSV row {row}: {e}"))?,
            rule_name: field(1),
            entity_kind: field(2).parse().map_err(|e| format!("CSV row {row}: {e}"))?,
            identifier: field(3),
            file: field(4),
            line: field(5).parse().map_err(|e| format!("CSV row {row}: bad line: {e}"))?,
            column: field(6).parse().map_err(|e| format!("CSV row {row}: bad column: {e}"))?,
            type_text: field(7),
            evidence,
            recommendation: field(9),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Location;
    use crate::rules::{violation, EntityKind, EvidenceValue, RuleId};

    fn sample_violations() -> Vec<Violation> {
        let mut ev = Evidence::new();
        ev.insert("first_term".into(), EvidenceValue::text("is"));
        ev.insert("return_type".into(), EvidenceValue::text("String"));
        let loc = Location { file: "src/A.java".into(), line: 12, column: 5 };
        let a2 = violation(
            RuleId::A2,
            EntityKind::Method,
            "isReady",
            &loc,
            "String",
            ev,
            "rename it".into(),
        );
        let mut ev2 = Evidence::new();
        ev2.insert("antonym_pair".into(), EvidenceValue::pair("get", "result"));
        let loc2 = Location { file: "src/B.cs".into(), line: 3, column: 1 };
        let c1 = violation(
            RuleId::C1,
            EntityKind::Method,
            "GetCompletionResult",
            &loc2,
            "CompletionResult",
            ev2,
            "pick one direction, with \"quotes\" and, commas".into(),
        );
        vec![a2, c1]
    }

    fn sample_report() -> AnalysisReport {
        AnalysisReport::new(
            InputsManifest {
                analyzed: vec!["a.xml".into()],
                skipped: vec![SkippedInput { path: "b.xml".into(), reason: "no language".into() }],
            },
            sample_violations(),
            None,
        )
    }

    #[test]
    fn summary_counts_only_nonzero_rules() {
        let report = sample_report();
        assert_eq!(report.summary.len(), 2);
        assert_eq!(report.summary["A.2"], 1);
        assert_eq!(report.summary["C.1"], 1);
        assert!(!report.summary.contains_key("B.1"));
    }

    #[test]
    fn json_round_trips() {
        let report = sample_report();
        let text = render(&report, Format::Json);
        let back = parse_report_json(&text).unwrap();
        assert_eq!(back, report);
        // elapsed_ms is absent from deterministic output entirely.
        assert!(!text.contains("elapsed_ms"));
    }

    #[test]
    fn json_carries_elapsed_only_when_present() {
        let mut report = sample_report();
        report.elapsed_ms = Some(7);
        let text = render(&report, Format::Json);
        assert!(text.contains("\"elapsed_ms\": 7"));
        assert_eq!(parse_report_json(&text).unwrap().elapsed_ms, Some(7));
    }

    #[test]
    fn csv_round_trips_with_quoting() {
        let report = sample_report();
        let text = render(&report, Format::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER.join(","));
        let back = parse_violations_csv(&text).unwrap();
        assert_eq!(back, report.violations);
    }

    #[test]
    fn csv_evidence_is_compact_json() {
        let text = render(&sample_report(), Format::Csv);
        assert!(
            text.contains(r#""{""antonym_pair"":[""get"",""result""]}""#),
            "{text}"
        );
    }

    #[test]
    fn text_format_lists_violations_and_summary() {
        let text = render(&sample_report(), Format::Text);
        assert!(text.contains("src/A.java:12:5: [A.2] method 'isReady'"), "{text}");
        assert!(text.contains("1 file analyzed, 1 skipped: 2 violations"), "{text}");
        assert!(text.contains("  A.2: 1"), "{text}");
        assert!(text.contains("skipped b.xml: no language"), "{text}");
    }

    #[test]
    fn wrong_version_and_garbage_are_rejected() {
        assert!(parse_report_json("not json").is_err());
        let mut report = sample_report();
        report.version = "999".into();
        let text = serde_json::to_string(&report).unwrap();
        let err = parse_report_json(&text).unwrap_err();
        assert!(err.contains("version"), "{err}");

        assert!(parse_violations_csv("a,b\n1,2\n").is_err());
        let bad_rule = format!("{}\nZ.9,n,method,id,f,1,1,t,{{}},r\n", CSV_HEADER.join(","));
        assert!(parse_violations_csv(&bad_rule).is_err());
    }
}
