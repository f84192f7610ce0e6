//! Special-character and test-prefix rules: G.1 and G.2.

use crate::model::{DataEntity, MethodEntity};
use crate::rules::{violation, EntityKind, Evidence, EvidenceValue, RuleId, Violation};

fn g1_recommendation(identifier: &str) -> String {
    format!("'{identifier}' contains only special characters; use a descriptive name.")
}

/// G.1 over methods (constructors included): name made only of characters
/// outside `[A-Za-z0-9]`.
pub fn g1_method(m: &MethodEntity) -> Option<Violation> {
    if !m.name.is_all_special() {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("name".into(), EvidenceValue::text(m.name.raw()));
    Some(violation(
        RuleId::G1,
        EntityKind::Method,
        m.name.raw(),
        &m.location,
        &m.return_type.raw_text,
        ev,
        g1_recommendation(m.name.raw()),
    ))
}

/// G.1 over attributes, locals, and parameters.
pub fn g1_data(d: &DataEntity) -> Option<Violation> {
    if !d.name.is_all_special() {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("name".into(), EvidenceValue::text(d.name.raw()));
    Some(violation(
        RuleId::G1,
        d.kind.into(),
        d.name.raw(),
        &d.location,
        &d.data_type.raw_text,
        ev,
        g1_recommendation(d.name.raw()),
    ))
}

/// G.2: a recognized test method whose first term is literally "test". The
/// only rule that fires exclusively on test methods.
pub fn g2(m: &MethodEntity) -> Option<Violation> {
    if !m.is_test {
        return None;
    }
    let first = m.name.first()?;
    if first.lower != "test" {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("first_term".into(), EvidenceValue::text(&first.lower));
    Some(violation(
        RuleId::G2,
        EntityKind::Method,
        m.name.raw(),
        &m.location,
        &m.return_type.raw_text,
        ev,
        format!(
            "'{}' carries a redundant 'test' prefix; the test annotation already marks it.",
            m.name.raw()
        ),
    ))
}
