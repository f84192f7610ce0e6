//! Precision evaluation of a report against hand-validated ground truth.
//!
//! Ground truth is a CSV of violations a reviewer labeled true or false
//! positive. Precision comes per rule, plus two aggregates that must not be
//! confused: the macro average (unweighted mean of per-rule precisions over
//! rules with validated samples) and the micro average (pooled true positives
//! over pooled validated samples).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::rules::{RuleId, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    TruePositive,
    FalsePositive,
}

impl Label {
    fn parse(text: &str) -> Result<Label, String> {
        match text.to_ascii_lowercase().as_str() {
            "tp" => Ok(Label::TruePositive),
            "fp" => Ok(Label::FalsePositive),
            other => Err(format!("unknown label '{other}' (expected TP or FP)")),
        }
    }
}

/// One reviewer-validated violation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruthEntry {
    pub file: String,
    pub line: u32,
    pub rule_id: RuleId,
    pub label: Label,
}

const TRUTH_HEADER: [&str; 4] = ["file", "line", "rule_id", "label"];

/// Parses a ground-truth CSV (`file,line,rule_id,label`). Labels are TP/FP,
/// case-insensitive. Duplicate (file, line, rule) rows are an error.
pub fn load_truth(text: &str) -> Result<Vec<GroundTruthEntry>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    {
        let headers = reader.headers().map_err(|e| format!("not a ground-truth CSV: {e}"))?;
        let got: Vec<&str> = headers.iter().collect();
        if got != TRUTH_HEADER {
            return Err(format!(
                "not a ground-truth CSV: header is {got:?}, expected {TRUTH_HEADER:?}"
            ));
        }
    }
    let mut out = Vec::new();
    let mut seen: BTreeSet<(String, u32, RuleId)> = BTreeSet::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| format!("row {row}: {e}"))?;
        let field = |idx: usize| record.get(idx).unwrap_or("").trim();
        let entry = GroundTruthEntry {
            file: field(0).to_string(),
            line: field(1).parse().map_err(|e| format!("row {row}: bad line number: {e}"))?,
            rule_id: field(2).parse().map_err(|e| format!("row {row}: {e}"))?,
            label: Label::parse(field(3)).map_err(|e| format!("row {row}: {e}"))?,
        };
        if !seen.insert((entry.file.clone(), entry.line, entry.rule_id)) {
            return Err(format!(
                "row {row}: duplicate sample for {}:{} {}",
                entry.file, entry.line, entry.rule_id
            ));
        }
        out.push(entry);
    }
    Ok(out)
}

/// Counts for one rule. `detected` is the rule's total hit count in the
/// analyzed report; when precision is computed from ground truth alone (no
/// report), it falls back to `validated`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RuleStats {
    pub detected: usize,
    pub validated: usize,
    pub true_positives: usize,
    pub false_positives: usize,
}

impl RuleStats {
    /// TP / validated; None when nothing was validated.
    pub fn precision(&self) -> Option<f64> {
        if self.validated == 0 {
            None
        } else {
            Some(self.true_positives as f64 / self.validated as f64)
        }
    }
}

/// Per-rule precision stats plus the two aggregate precisions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct PrecisionTable {
    pub rules: BTreeMap<RuleId, RuleStats>,
}

impl PrecisionTable {
    pub fn total_detected(&self) -> usize {
        self.rules.values().map(|s| s.detected).sum()
    }

    pub fn total_validated(&self) -> usize {
        self.rules.values().map(|s| s.validated).sum()
    }

    pub fn total_true_positives(&self) -> usize {
        self.rules.values().map(|s| s.true_positives).sum()
    }

    pub fn total_false_positives(&self) -> usize {
        self.rules.values().map(|s| s.false_positives).sum()
    }

    /// Unweighted mean of per-rule precisions over rules with validated
    /// samples; None when no rule has any.
    pub fn macro_precision(&self) -> Option<f64> {
        let precisions: Vec<f64> = self.rules.values().filter_map(|s| s.precision()).collect();
        if precisions.is_empty() {
            None
        } else {
            Some(precisions.iter().sum::<f64>() / precisions.len() as f64)
        }
    }

    /// Pooled precision: total TP over total validated samples.
    pub fn micro_precision(&self) -> Option<f64> {
        let validated = self.total_validated();
        if validated == 0 {
            None
        } else {
            Some(self.total_true_positives() as f64 / validated as f64)
        }
    }

    /// Plain-text table with per-rule rows, a total row, and both aggregates.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<6} {:>9} {:>10} {:>9} {:>9} {:>10}",
            "rule", "detected", "validated", "true_pos", "false_pos", "precision"
        );
        for (rule, s) in &self.rules {
            let precision = match s.precision() {
                Some(p) => format!("{:.2}%", p * 100.0),
                None => "n/a".to_string(),
            };
            let _ = writeln!(
                out,
                "{:<6} {:>9} {:>10} {:>9} {:>9} {:>10}",
                rule.id(),
                s.detected,
                s.validated,
                s.true_positives,
                s.false_positives,
                precision
            );
        }
        let _ = writeln!(
            out,
            "{:<6} {:>9} {:>10} {:>9} {:>9}",
            "total",
            self.total_detected(),
            self.total_validated(),
            self.total_true_positives(),
            self.total_false_positives()
        );
        if let Some(p) = self.macro_precision() {
            let _ = writeln!(
                out,
                "macro-average precision (mean over validated rules): {:.2}%",
                p * 100.0
            );
        }
        if let Some(p) = self.micro_precision() {
            let _ = writeln!(
                out,
                "micro-average precision ({}/{}): {:.2}%",
                self.total_true_positives(),
                self.total_validated(),
                p * 100.0
            );
        }
        out
    }
}

/// Builds the precision table from ground truth alone. Without a report,
/// `detected` falls back to the validated count per rule.
pub fn compute_precision(truth: &[GroundTruthEntry]) -> PrecisionTable {
    let mut rules: BTreeMap<RuleId, RuleStats> = BTreeMap::new();
    for entry in truth {
        let s = rules.entry(entry.rule_id).or_default();
        s.validated += 1;
        match entry.label {
            Label::TruePositive => s.true_positives += 1,
            Label::FalsePositive => s.false_positives += 1,
        }
    }
    for s in rules.values_mut() {
        s.detected = s.validated;
    }
    PrecisionTable { rules }
}

/// Result of joining a report with ground truth on (file, line, rule).
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub table: PrecisionTable,
    /// Validated samples the report also contains.
    pub matched: usize,
    /// Validated samples absent from the report.
    pub missed: Vec<GroundTruthEntry>,
    /// Report violations no reviewer has validated.
    pub unvalidated: usize,
}

impl Evaluation {
    pub fn render(&self) -> String {
        let mut out = self.table.render();
        let _ = writeln!(
            out,
            "matched {} of {} validated samples; {} report violations unvalidated",
            self.matched,
            self.matched + self.missed.len(),
            self.unvalidated
        );
        for m in &self.missed {
            let _ = writeln!(out, "  missing from report: {}:{} {}", m.file, m.line, m.rule_id);
        }
        out
    }
}

/// Joins report violations with ground truth. Per-rule `detected` counts come
/// from the report; rules in the report without any validated sample get a
/// row with zero validated (excluded from the macro average).
pub fn evaluate(violations: &[Violation], truth: &[GroundTruthEntry]) -> Evaluation {
    let mut table = compute_precision(truth);

    let mut detected: BTreeMap<RuleId, usize> = BTreeMap::new();
    for v in violations {
        *detected.entry(v.rule_id).or_insert(0) += 1;
    }
    for (rule, stats) in table.rules.iter_mut() {
        stats.detected = detected.get(rule).copied().unwrap_or(0);
    }
    for (rule, n) in &detected {
        table
            .rules
            .entry(*rule)
            .or_insert(RuleStats { detected: *n, ..RuleStats::default() });
    }

    let report_keys: BTreeSet<(&str, u32, RuleId)> =
        violations.iter().map(|v| (v.file.as_str(), v.line, v.rule_id)).collect();
    let truth_keys: BTreeSet<(&str, u32, RuleId)> =
        truth.iter().map(|t| (t.file.as_str(), t.line, t.rule_id)).collect();

    let mut matched = 0;
    let mut missed = Vec::new();
    for t in truth {
        if report_keys.contains(&(t.file.as_str(), t.line, t.rule_id)) {
            matched += 1;
        } else {
            missed.push(t.clone());
        }
    }
    let unvalidated = violations
        .iter()
        .filter(|v| !truth_keys.contains(&(v.file.as_str(), v.line, v.rule_id)))
        .count();

    Evaluation { table, matched, missed, unvalidated }
}

/// Published reference counts per rule: (rule, detected, validated, true
/// positives). Used by tests and the acceptance gate as a fixed benchmark for
/// the precision arithmetic.
pub const REFERENCE_COUNTS: [(RuleId, usize, usize, usize); 19] = [
    (RuleId::A1, 53, 34, 34),
    (RuleId::A2, 45, 37, 37),
    (RuleId::A3, 129, 64, 63),
    (RuleId::A4, 341, 127, 102),
    (RuleId::B1, 912, 171, 73),
    (RuleId::B2, 446, 166, 165),
    (RuleId::B3, 260, 101, 101),
    (RuleId::B4, 18, 16, 5),
    (RuleId::B5, 271, 107, 46),
    (RuleId::B6, 827, 159, 128),
    (RuleId::C1, 139, 74, 54),
    (RuleId::C2, 294, 112, 13),
    (RuleId::D1, 3359, 262, 261),
    (RuleId::D2, 83, 53, 53),
    (RuleId::E1, 5506, 268, 253),
    (RuleId::F1, 38, 32, 19),
    (RuleId::F2, 165, 91, 15),
    (RuleId::G1, 1, 1, 1),
    (RuleId::G2, 853, 144, 144),
];

/// Ground truth whose per-rule counts equal [`REFERENCE_COUNTS`]; file/line
/// keys are synthetic.
pub fn reference_truth() -> Vec<GroundTruthEntry> {
    let mut out = Vec::new();
    for (rule, _detected, validated, tp) in REFERENCE_COUNTS {
        for i in 0..validated {
            out.push(GroundTruthEntry {
                file: format!("sample/{}.java", rule.id()),
                line: (i + 1) as u32,
                rule_id: rule,
                label: if i < tp { Label::TruePositive } else { Label::FalsePositive },
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Location;
    use crate::rules::{violation, EntityKind, Evidence};

    #[test]
    fn load_truth_parses_and_validates() {
        let text = "file,line,rule_id,label\na.java,10,B.3,TP\na.java,11,B.3,fp\n";
        let truth = load_truth(text).unwrap();
        assert_eq!(truth.len(), 2);
        assert_eq!(truth[0].label, Label::TruePositive);
        assert_eq!(truth[1].label, Label::FalsePositive);

        assert!(load_truth("wrong,header\n").is_err());
        let dup = "file,line,rule_id,label\na.java,10,B.3,TP\na.java,10,B.3,FP\n";
        let err = load_truth(dup).unwrap_err();
        assert!(err.contains("row 3") && err.contains("duplicate"), "{err}");
        let bad = "file,line,rule_id,label\na.java,10,B.3,maybe\n";
        assert!(load_truth(bad).is_err());
    }

    /// The reference counts must reproduce the published per-rule precision
    /// column and both aggregates. The expected strings are frozen from
    /// independent arithmetic on the (TP, validated) pairs.
    #[test]
    fn reference_counts_reproduce_published_precision() {
        let mut table = compute_precision(&reference_truth());
        for (rule, detected, _validated, _tp) in REFERENCE_COUNTS {
            table.rules.get_mut(&rule).unwrap().detected = detected;
        }

        let expected: [(&str, &str); 19] = [
            ("A.1", "100.00"),
            ("A.2", "100.00"),
            ("A.3", "98.44"),
            ("A.4", "80.31"),
            ("B.1", "42.69"),
            ("B.2", "99.40"),
            ("B.3", "100.00"),
            ("B.4", "31.25"),
            ("B.5", "42.99"),
            ("B.6", "80.50"),
            ("C.1", "72.97"),
            ("C.2", "11.61"),
            ("D.1", "99.62"),
            ("D.2", "100.00"),
            ("E.1", "94.40"),
            ("F.1", "59.38"),
            ("F.2", "16.48"),
            ("G.1", "100.00"),
            ("G.2", "100.00"),
        ];
        for (id, want) in expected {
            let rule: RuleId = id.parse().unwrap();
            let p = table.rules[&rule].precision().unwrap();
            assert_eq!(format!("{:.2}", p * 100.0), want, "rule {id}");
        }

        assert_eq!(table.total_detected(), 13_740);
        assert_eq!(table.total_validated(), 2_019);
        assert_eq!(table.total_true_positives(), 1_567);
        assert_eq!(table.total_false_positives(), 452);

        let macro_p = table.macro_precision().unwrap() * 100.0;
        assert!((macro_p - 75.265_466).abs() < 1e-4, "macro = {macro_p}");
        assert_eq!(format!("{macro_p:.2}"), "75.27");

        let micro_p = table.micro_precision().unwrap() * 100.0;
        assert!((micro_p - 77.612_680).abs() < 1e-4, "micro = {micro_p}");
        assert_eq!(format!("{micro_p:.2}"), "77.61");

        let rendered = table.render();
        assert!(rendered.contains("75.27%"), "{rendered}");
        assert!(rendered.contains("77.61%"), "{rendered}");
        assert!(rendered.contains("1567/2019"), "{rendered}");
    }

    fn report_violation(file: &str, line: u32, rule: RuleId) -> Violation {
        let loc = Location { file: file.into(), line, column: 1 };
        violation(rule, EntityKind::Method, "m", &loc, "void", Evidence::new(), "fix".into())
    }

    #[test]
    fn evaluate_joins_on_file_line_rule() {
        let truth = load_truth(
            "file,line,rule_id,label\n\
             a.java,10,B.3,TP\n\
             a.java,20,B.3,FP\n\
             b.java,5,A.3,TP\n",
        )
        .unwrap();
        let violations = vec![
            report_violation("a.java", 10, RuleId::B3),
            report_violation("a.java", 99, RuleId::B3),
            report_violation("c.java", 1, RuleId::G1),
        ];
        let eval = evaluate(&violations, &truth);
        assert_eq!(eval.matched, 1);
        assert_eq!(eval.missed.len(), 2);
        assert_eq!(eval.unvalidated, 2);
        // Detected counts come from the report, not the truth file.
        assert_eq!(eval.table.rules[&RuleId::B3].detected, 2);
        assert_eq!(eval.table.rules[&RuleId::B3].validated, 2);
        assert_eq!(eval.table.rules[&RuleId::A3].detected, 0);
        // G.1 appears with zero validated samples and no precision.
        assert_eq!(eval.table.rules[&RuleId::G1].validated, 0);
        assert_eq!(eval.table.rules[&RuleId::G1].precision(), None);
        // The macro average ignores the zero-validated G.1 row.
        let macro_p = eval.table.macro_precision().unwrap();
        assert!((macro_p - 0.75).abs() < 1e-9, "{macro_p}");
        let rendered = eval.render();
        assert!(rendered.contains("matched 1 of 3"), "{rendered}");
        assert!(rendered.contains("missing from report: a.java:20 B.3"), "{rendered}");
    }

    #[test]
    fn empty_truth_has_no_aggregates() {
        let table = compute_precision(&[]);
        assert_eq!(table.macro_precision(), None);
        assert_eq!(table.micro_precision(), None);
        assert_eq!(table.render().lines().count(), 2); // header + total
    }
}
