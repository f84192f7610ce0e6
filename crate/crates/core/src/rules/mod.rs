//! The rule catalogue and the engine that applies it to extracted units.

mod contradiction;
mod data;
mod methods;
mod special;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::Resolved;
use crate::model::{DataEntity, Location, SourceUnit};

/// Identifier of one naming rule. Ordering follows the catalogue (A.1 first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleId {
    A1,
    A2,
    A3,
    A4,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    C1,
    C2,
    D1,
    D2,
    E1,
    F1,
    F2,
    G1,
    G2,
}

impl RuleId {
    pub const ALL: [RuleId; 19] = [
        RuleId::A1,
        RuleId::A2,
        RuleId::A3,
        RuleId::A4,
        RuleId::B1,
        RuleId::B2,
        RuleId::B3,
        RuleId::B4,
        RuleId::B5,
        RuleId::B6,
        RuleId::C1,
        RuleId::C2,
        RuleId::D1,
        RuleId::D2,
        RuleId::E1,
        RuleId::F1,
        RuleId::F2,
        RuleId::G1,
        RuleId::G2,
    ];

    pub fn id(&self) -> &'static str {
        match self {
            RuleId::A1 => "A.1",
            RuleId::A2 => "A.2",
            RuleId::A3 => "A.3",
            RuleId::A4 => "A.4",
            RuleId::B1 => "B.1",
            RuleId::B2 => "B.2",
            RuleId::B3 => "B.3",
            RuleId::B4 => "B.4",
            RuleId::B5 => "B.5",
            RuleId::B6 => "B.6",
            RuleId::C1 => "C.1",
            RuleId::C2 => "C.2",
            RuleId::D1 => "D.1",
            RuleId::D2 => "D.2",
            RuleId::E1 => "E.1",
            RuleId::F1 => "F.1",
            RuleId::F2 => "F.2",
            RuleId::G1 => "G.1",
            RuleId::G2 => "G.2",
        }
    }

    /// Human-readable pattern title reported alongside the id.
    pub fn name(&self) -> &'static str {
        match self {
            RuleId::A1 => "\"Get\" more than accessor",
            RuleId::A2 => "\"Is\" returns more than a Boolean",
            RuleId::A3 => "\"Set\" method returns",
            RuleId::A4 => "Expecting but not getting single instance",
            RuleId::B1 => "Not implemented condition",
            RuleId::B2 => "Validation method does not confirm",
            RuleId::B3 => "\"Get\" method does not return",
            RuleId::B4 => "Not answered question",
            RuleId::B5 => "Transform method does not return",
            RuleId::B6 => "Expecting but not getting a collection",
            RuleId::C1 => "Method name and return type are opposite",
            RuleId::C2 => "Method signature and comment are opposite",
            RuleId::D1 => "Says one but contains many",
            RuleId::D2 => "Name suggests Boolean but type does not",
            RuleId::E1 => "Says many but contains one",
            RuleId::F1 => "Attribute name and type are opposite",
            RuleId::F2 => "Attribute signature and comment are opposite",
            RuleId::G1 => "Name contains only special characters",
            RuleId::G2 => "Redundant use of \"test\" in method name",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown rule id or pattern '{0}' (expected e.g. \"B.2\", \"B.*\", or \"*\")")]
pub struct BadRulePattern(pub String);

impl FromStr for RuleId {
    type Err = BadRulePattern;

    fn from_str(s: &str) -> Result<RuleId, BadRulePattern> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.id() == s)
            .ok_or_else(|| BadRulePattern(s.to_string()))
    }
}

impl Serialize for RuleId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for RuleId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<RuleId, D::Error> {
        let raw = String::deserialize(d)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Expands a rule pattern: an exact id (`B.2`), a group glob (`B.*`), or `*`.
pub fn expand_rule_pattern(pattern: &str) -> Result<Vec<RuleId>, BadRulePattern> {
    if pattern == "*" {
        return Ok(RuleId::ALL.to_vec());
    }
    if let Some(group) = pattern.strip_suffix(".*") {
        let prefix = format!("{group}.");
        let hits: Vec<RuleId> =
            RuleId::ALL.iter().copied().filter(|r| r.id().starts_with(&prefix)).collect();
        if hits.is_empty() {
            return Err(BadRulePattern(pattern.to_string()));
        }
        return Ok(hits);
    }
    pattern.parse().map(|r| vec![r])
}

/// The set of rules enabled for a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    enabled: BTreeSet<RuleId>,
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet { enabled: RuleId::ALL.iter().copied().collect() }
    }
}

impl RuleSet {
    /// Builds from config lists: `enable` (when non-empty, only these run)
    /// then `disable` subtracts.
    pub fn from_patterns(enable: &[String], disable: &[String]) -> Result<RuleSet, BadRulePattern> {
        let mut enabled: BTreeSet<RuleId> = if enable.is_empty() {
            RuleId::ALL.iter().copied().collect()
        } else {
            let mut set = BTreeSet::new();
            for pat in enable {
                set.extend(expand_rule_pattern(pat)?);
            }
            set
        };
        for pat in disable {
            for r in expand_rule_pattern(pat)? {
                enabled.remove(&r);
            }
        }
        Ok(RuleSet { enabled })
    }

    /// Narrows to the intersection with `patterns` (the CLI `--rules` flag).
    pub fn restrict(&self, patterns: &[String]) -> Result<RuleSet, BadRulePattern> {
        let mut keep = BTreeSet::new();
        for pat in patterns {
            keep.extend(expand_rule_pattern(pat)?);
        }
        Ok(RuleSet { enabled: self.enabled.intersection(&keep).copied().collect() })
    }

    pub fn is_enabled(&self, rule: RuleId) -> bool {
        self.enabled.contains(&rule)
    }

    pub fn enabled_ids(&self) -> impl Iterator<Item = RuleId> + '_ {
        self.enabled.iter().copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKind {
    Method,
    Attribute,
    Variable,
    Parameter,
}

impl EntityKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            EntityKind::Method => "method",
            EntityKind::Attribute => "attribute",
            EntityKind::Variable => "variable",
            EntityKind::Parameter => "parameter",
        }
    }
}

impl FromStr for EntityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<EntityKind, String> {
        match s {
            "method" => Ok(EntityKind::Method),
            "attribute" => Ok(EntityKind::Attribute),
            "variable" => Ok(EntityKind::Variable),
            "parameter" => Ok(EntityKind::Parameter),
            other => Err(format!("unknown entity kind '{other}'")),
        }
    }
}

impl From<crate::model::DataKind> for EntityKind {
    fn from(kind: crate::model::DataKind) -> EntityKind {
        match kind {
            crate::model::DataKind::Attribute => EntityKind::Attribute,
            crate::model::DataKind::Local => EntityKind::Variable,
            crate::model::DataKind::Parameter => EntityKind::Parameter,
        }
    }
}

/// One evidence value: a single term or an ordered list (antonym pairs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EvidenceValue {
    Text(String),
    List(Vec<String>),
}

impl EvidenceValue {
    pub fn text(value: impl Into<String>) -> EvidenceValue {
        EvidenceValue::Text(value.into())
    }

    pub fn pair(a: impl Into<String>, b: impl Into<String>) -> EvidenceValue {
        EvidenceValue::List(vec![a.into(), b.into()])
    }
}

pub type Evidence = BTreeMap<String, EvidenceValue>;

/// One reported rule violation. Field order here is the JSON and CSV column
/// order of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub rule_id: RuleId,
    pub rule_name: String,
    pub entity_kind: EntityKind,
    pub identifier: String,
    pub file: String,
    pub line: u32,
    pub column: u32,
    /// Declared type text: return type for methods, data type otherwise.
    #[serde(rename = "type")]
    pub type_text: String,
    pub evidence: Evidence,
    pub recommendation: String,
}

pub(crate) fn violation(
    rule: RuleId,
    entity_kind: EntityKind,
    identifier: &str,
    location: &Location,
    type_text: &str,
    evidence: Evidence,
    recommendation: String,
) -> Violation {
    Violation {
        rule_id: rule,
        rule_name: rule.name().to_string(),
        entity_kind,
        identifier: identifier.to_string(),
        file: location.file.clone(),
        line: location.line,
        column: location.column,
        type_text: type_text.to_string(),
        evidence,
        recommendation,
    }
}

/// Applies every enabled rule to every entity of `unit`.
pub fn evaluate_unit(unit: &SourceUnit, cfg: &Resolved) -> Vec<Violation> {
    let lex = cfg.lexicons(unit.language);
    let rules = &cfg.rules;
    let mut out = Vec::new();

    let on = |rule: RuleId, hit: Option<Violation>, out: &mut Vec<Violation>| {
        if rules.is_enabled(rule) {
            out.extend(hit);
        }
    };

    for m in &unit.methods {
        let class = m.enclosing_class.as_deref().and_then(|n| unit.class(n));
        if !m.is_constructor {
            on(RuleId::A1, methods::a1(m, class, lex), &mut out);
            on(RuleId::A2, methods::a2(m, lex), &mut out);
            on(RuleId::A3, methods::a3(m, lex), &mut out);
            on(RuleId::A4, methods::a4(m, lex), &mut out);
            on(RuleId::B1, methods::b1(m, lex), &mut out);
            on(RuleId::B2, methods::b2(m, lex), &mut out);
            on(RuleId::B3, methods::b3(m, lex), &mut out);
            on(RuleId::B4, methods::b4(m, lex), &mut out);
            on(RuleId::B5, methods::b5(m, lex), &mut out);
            on(RuleId::B6, methods::b6(m, lex), &mut out);
            on(RuleId::C1, contradiction::c1(m, lex), &mut out);
            on(RuleId::C2, contradiction::c2(m, lex), &mut out);
        }
        on(RuleId::G1, special::g1_method(m), &mut out);
        on(RuleId::G2, special::g2(m), &mut out);
        for p in &m.parameters {
            data_entity_rules(p, lex, cfg, &mut out);
        }
    }

    for class in &unit.classes {
        for attr in &class.attributes {
            data_entity_rules(attr, lex, cfg, &mut out);
        }
    }

    for v in &unit.free_variables {
        data_entity_rules(v, lex, cfg, &mut out);
    }

    out
}

fn data_entity_rules(
    d: &DataEntity,
    lex: &crate::lexicon::Lexicons,
    cfg: &Resolved,
    out: &mut Vec<Violation>,
) {
    let rules = &cfg.rules;
    let on = |rule: RuleId, hit: Option<Violation>, out: &mut Vec<Violation>| {
        if rules.is_enabled(rule) {
            out.extend(hit);
        }
    };
    on(RuleId::D1, data::d1(d, lex), out);
    on(RuleId::D2, data::d2(d, lex), out);
    on(RuleId::E1, data::e1(d, lex), out);
    on(RuleId::F1, contradiction::f1(d, lex), out);
    on(RuleId::F2, contradiction::f2(d, lex), out);
    on(RuleId::G1, special::g1_data(d), out);
}

/// Runs the engine over all units, sharding across the current rayon pool,
/// and returns violations sorted by (file, line, column, rule id). The sort
/// is stable and per-entity evaluation is pure, so output is identical for
/// any worker count.
pub fn run_rules(units: &[SourceUnit], cfg: &Resolved) -> Vec<Violation> {
    let mut violations: Vec<Violation> = units
        .par_iter()
        .map(|u| evaluate_unit(u, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    violations.sort_by(|a, b| {
        (&a.file, a.line, a.column, a.rule_id).cmp(&(&b.file, b.line, b.column, b.rule_id))
    });
    violations
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_ids_round_trip_through_strings() {
        for r in RuleId::ALL {
            assert_eq!(r.id().parse::<RuleId>().unwrap(), r);
        }
        assert!("B.7".parse::<RuleId>().is_err());
        assert!("X.1".parse::<RuleId>().is_err());
    }

    #[test]
    fn rule_id_order_is_catalogue_order() {
        let mut sorted = RuleId::ALL.to_vec();
        sorted.sort();
        assert_eq!(sorted, RuleId::ALL.to_vec());
        assert!(RuleId::A1 < RuleId::B6);
        assert!(RuleId::B6 < RuleId::G2);
    }

    #[test]
    fn pattern_expansion() {
        assert_eq!(expand_rule_pattern("A.1").unwrap(), vec![RuleId::A1]);
        let b: Vec<RuleId> = expand_rule_pattern("B.*").unwrap();
        assert_eq!(
            b,
            vec![RuleId::B1, RuleId::B2, RuleId::B3, RuleId::B4, RuleId::B5, RuleId::B6]
        );
        assert_eq!(expand_rule_pattern("*").unwrap().len(), 19);
        assert!(expand_rule_pattern("H.*").is_err());
        assert!(expand_rule_pattern("B.9").is_err());
        assert!(expand_rule_pattern("").is_err());
    }

    #[test]
    fn ruleset_enable_disable_and_restrict() {
        let all = RuleSet::default();
        assert!(all.is_enabled(RuleId::C2));

        let only_b = RuleSet::from_patterns(&["B.*".to_string()], &[]).unwrap();
        assert!(only_b.is_enabled(RuleId::B1));
        assert!(!only_b.is_enabled(RuleId::A1));

        let no_c2 = RuleSet::from_patterns(&[], &["C.2".to_string()]).unwrap();
        assert!(!no_c2.is_enabled(RuleId::C2));
        assert!(no_c2.is_enabled(RuleId::C1));

        let narrowed = no_c2.restrict(&["C.*".to_string()]).unwrap();
        assert!(narrowed.is_enabled(RuleId::C1));
        assert!(!narrowed.is_enabled(RuleId::C2));
        assert!(!narrowed.is_enabled(RuleId::B1));
    }

    #[test]
    fn evidence_serializes_as_string_or_array() {
        let mut ev = Evidence::new();
        ev.insert("first_term".into(), EvidenceValue::text("get"));
        ev.insert("antonym_pair".into(), EvidenceValue::pair("get", "result"));
        let json = serde_json::to_string(&ev).unwrap();
        assert_eq!(json, r#"{"antonym_pair":["get","result"],"first_term":"get"}"#);
        let back: Evidence = serde_json::from_str(&json).unwrap();
        assert_eq!(back, ev);
    }
}
