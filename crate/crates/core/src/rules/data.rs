//! Data-entity rules: D.1, D.2, E.1 over attributes, locals, and parameters.

use crate::lexicon::{Lexicons, TermCategory, TermPosition};
use crate::model::{DataEntity, TypeClass};
use crate::rules::{violation, Evidence, EvidenceValue, RuleId, Violation};

fn data_violation(
    rule: RuleId,
    d: &DataEntity,
    evidence: Evidence,
    recommendation: String,
) -> Violation {
    violation(
        rule,
        d.kind.into(),
        d.name.raw(),
        &d.location,
        &d.data_type.raw_text,
        evidence,
        recommendation,
    )
}

/// D.1: singular name declared with a collection type.
pub fn d1(d: &DataEntity, lex: &Lexicons) -> Option<Violation> {
    let last = d.name.last_noun_term()?;
    if lex.terms.is_plural(&last.lower)
        || d.data_type.classification != TypeClass::Collection
    {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("last_term".into(), EvidenceValue::text(&last.lower));
    ev.insert("data_type".into(), EvidenceValue::text(&d.data_type.raw_text));
    Some(data_violation(
        RuleId::D1,
        d,
        ev,
        format!(
            "'{}' is singular but its type '{}' holds many values; pluralize the name.",
            d.name.raw(),
            d.data_type.raw_text
        ),
    ))
}

/// D.2: predicate-named entity whose type is not boolean. Unknown
/// classifications (e.g. `var`) stay silent.
pub fn d2(d: &DataEntity, lex: &Lexicons) -> Option<Violation> {
    let first = lex.terms.find_category(&d.name, TermCategory::Predicate, TermPosition::First)?;
    if matches!(d.data_type.classification, TypeClass::Boolean | TypeClass::Unknown) {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("first_term".into(), EvidenceValue::text(&first.lower));
    ev.insert("data_type".into(), EvidenceValue::text(&d.data_type.raw_text));
    Some(data_violation(
        RuleId::D2,
        d,
        ev,
        format!(
            "'{}' reads as a yes/no flag but is declared '{}'; use a boolean or rename it.",
            d.name.raw(),
            d.data_type.raw_text
        ),
    ))
}

/// E.1: plural name declared with a non-collection type. Unknown
/// classifications stay silent.
pub fn e1(d: &DataEntity, lex: &Lexicons) -> Option<Violation> {
    let last = d.name.last_noun_term()?;
    if !lex.terms.is_plural(&last.lower)
        || matches!(d.data_type.classification, TypeClass::Collection | TypeClass::Unknown)
    {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("last_term".into(), EvidenceValue::text(&last.lower));
    ev.insert("data_type".into(), EvidenceValue::text(&d.data_type.raw_text));
    Some(data_violation(
        RuleId::E1,
        d,
        ev,
        format!(
            "'{}' is plural but its type '{}' holds a single value; singularize the name \
             or use a collection.",
            d.name.raw(),
            d.data_type.raw_text
        ),
    ))
}
