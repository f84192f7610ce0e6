//! Accessor rules (A.1-A.4) and behavior rules (B.1-B.6).
//!
//! Every function returns at most one violation for its rule; callers handle
//! rule enablement, constructor exclusion, and ordering.

use crate::lexicon::antonym::tokenize_words;
use crate::lexicon::{Lexicons, TermCategory, TermPosition};
use crate::model::{Access, ClassContext, MethodEntity, TypeClass};
use crate::rules::{violation, EntityKind, Evidence, EvidenceValue, RuleId, Violation};

fn method_violation(
    rule: RuleId,
    m: &MethodEntity,
    evidence: Evidence,
    recommendation: String,
) -> Violation {
    violation(
        rule,
        EntityKind::Method,
        m.name.raw(),
        &m.location,
        &m.return_type.raw_text,
        evidence,
        recommendation,
    )
}

/// A.1: a public or protected getter that embeds an attribute name, returns
/// that attribute's declared type, and hides conditional logic in its body.
/// Skips test methods; only attributes declared in the enclosing class count.
pub fn a1(m: &MethodEntity, class: Option<&ClassContext>, lex: &Lexicons) -> Option<Violation> {
    if m.is_test || !matches!(m.access, Access::Public | Access::Protected) {
        return None;
    }
    lex.terms.find_category(&m.name, TermCategory::Get, TermPosition::First)?;
    if !m.body.has_conditional {
        return None;
    }
    let attr = class?
        .attributes_matching_term(&m.name)
        .into_iter()
        .find(|a| {
            !a.data_type.base_name.is_empty()
                && a.data_type.base_name == m.return_type.base_name
        })?;
    let mut ev = Evidence::new();
    ev.insert("attribute".into(), EvidenceValue::text(attr.name.raw()));
    ev.insert("return_type".into(), EvidenceValue::text(&m.return_type.raw_text));
    Some(method_violation(
        RuleId::A1,
        m,
        ev,
        format!(
            "'{}' reads like a plain accessor of '{}' but branches internally; move the \
             conditional logic elsewhere or rename the method to say what it decides.",
            m.name.raw(),
            attr.name.raw()
        ),
    ))
}

/// A.2: predicate-named method whose return type is not boolean. Unknown
/// return classifications stay silent. Skips test methods.
pub fn a2(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let first = lex.terms.find_category(&m.name, TermCategory::Predicate, TermPosition::First)?;
    if matches!(m.return_type.classification, TypeClass::Boolean | TypeClass::Unknown) {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("first_term".into(), EvidenceValue::text(&first.lower));
    ev.insert("return_type".into(), EvidenceValue::text(&m.return_type.raw_text));
    Some(method_violation(
        RuleId::A2,
        m,
        ev,
        format!(
            "'{}' asks a yes/no question but returns '{}'; return a boolean or rename the method.",
            m.name.raw(),
            m.return_type.raw_text
        ),
    ))
}

/// A.3: setter that returns something. Applies to test methods as well.
pub fn a3(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    let first = lex.terms.find_category(&m.name, TermCategory::Set, TermPosition::First)?;
    if m.return_type.classification == TypeClass::Void {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("first_term".into(), EvidenceValue::text(&first.lower));
    ev.insert("return_type".into(), EvidenceValue::text(&m.return_type.raw_text));
    Some(method_violation(
        RuleId::A3,
        m,
        ev,
        format!(
            "'{}' is named like a setter yet returns '{}'; declare it void or name the result.",
            m.name.raw(),
            m.return_type.raw_text
        ),
    ))
}

/// A.4: name promises a single instance (singular last term, no collection
/// word anywhere) but the method returns a collection. Skips test methods.
pub fn a4(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let last = m.name.last_noun_term()?;
    if lex.terms.is_plural(&last.lower)
        || lex.terms.has_category(&m.name, TermCategory::CollectionWord, TermPosition::Any)
        || m.return_type.classification != TypeClass::Collection
    {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("last_term".into(), EvidenceValue::text(&last.lower));
    ev.insert("return_type".into(), EvidenceValue::text(&m.return_type.raw_text));
    Some(method_violation(
        RuleId::A4,
        m,
        ev,
        format!(
            "'{}' names a single '{}' but returns collection '{}'; pluralize the name or \
             return one instance.",
            m.name.raw(),
            last.lower,
            m.return_type.raw_text
        ),
    ))
}

/// B.1: the name or associated comment mentions a condition the body never
/// checks. Applies to test methods as well.
pub fn b1(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.body.has_conditional {
        return None;
    }
    let (term, source) = if let Some(t) =
        lex.terms.find_category(&m.name, TermCategory::Conditional, TermPosition::Any)
    {
        (t.lower.clone(), "name")
    } else {
        let comment = m.comment.as_ref()?;
        let hit = tokenize_words(&comment.text)
            .into_iter()
            .find(|w| lex.terms.contains(TermCategory::Conditional, w))?;
        (hit, "comment")
    };
    let mut ev = Evidence::new();
    ev.insert("term".into(), EvidenceValue::text(&term));
    ev.insert("source".into(), EvidenceValue::text(source));
    Some(method_violation(
        RuleId::B1,
        m,
        ev,
        format!(
            "'{}' advertises a condition ('{}' in its {}) that the body never tests; \
             implement the check or drop the conditional wording.",
            m.name.raw(),
            term,
            source
        ),
    ))
}

/// B.2: validation-named method that neither returns a result nor throws nor
/// declares an exception. Skips test methods.
pub fn b2(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let first = lex.terms.find_category(&m.name, TermCategory::Validation, TermPosition::First)?;
    if m.return_type.classification != TypeClass::Void
        || m.body.has_throw
        || m.body.declares_throws
    {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("first_term".into(), EvidenceValue::text(&first.lower));
    Some(method_violation(
        RuleId::B2,
        m,
        ev,
        format!(
            "'{}' claims to validate but gives no verdict; throw on failure or return the \
             outcome.",
            m.name.raw()
        ),
    ))
}

/// B.3: getter that returns void. Skips test methods.
pub fn b3(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let first = lex.terms.find_category(&m.name, TermCategory::Get, TermPosition::First)?;
    if m.return_type.classification != TypeClass::Void {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("first_term".into(), EvidenceValue::text(&first.lower));
    Some(method_violation(
        RuleId::B3,
        m,
        ev,
        format!(
            "'{}' promises to fetch a value but returns void; return the value or rename \
             the method.",
            m.name.raw()
        ),
    ))
}

/// B.4: predicate-named method that returns void. Skips test methods.
pub fn b4(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let first = lex.terms.find_category(&m.name, TermCategory::Predicate, TermPosition::First)?;
    if m.return_type.classification != TypeClass::Void {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("first_term".into(), EvidenceValue::text(&first.lower));
    Some(method_violation(
        RuleId::B4,
        m,
        ev,
        format!(
            "'{}' asks a question but returns no answer; return a boolean or rename the method.",
            m.name.raw()
        ),
    ))
}

/// B.5: transformation term in first or inner (non-final) position with a
/// void return. A trailing term like the "To" of `applyTo` does not count.
/// Skips test methods.
pub fn b5(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let term = lex
        .terms
        .find_category(&m.name, TermCategory::Transformation, TermPosition::First)
        .or_else(|| {
            lex.terms.find_category(&m.name, TermCategory::Transformation, TermPosition::Inner)
        })?;
    if m.return_type.classification != TypeClass::Void {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("term".into(), EvidenceValue::text(&term.lower));
    Some(method_violation(
        RuleId::B5,
        m,
        ev,
        format!(
            "'{}' promises a transformation ('{}') but returns void; return the converted \
             value or rename the method.",
            m.name.raw(),
            term.lower
        ),
    ))
}

/// B.6: getter whose name carries a plural term or collection word but whose
/// return type is not a collection. Skips test methods.
pub fn b6(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    lex.terms.find_category(&m.name, TermCategory::Get, TermPosition::First)?;
    let term = lex.terms.find_plural_or_collection_term(&m.name)?;
    if matches!(m.return_type.classification, TypeClass::Collection | TypeClass::Unknown) {
        return None;
    }
    let mut ev = Evidence::new();
    ev.insert("term".into(), EvidenceValue::text(&term.lower));
    ev.insert("return_type".into(), EvidenceValue::text(&m.return_type.raw_text));
    Some(method_violation(
        RuleId::B6,
        m,
        ev,
        format!(
            "'{}' suggests a collection ('{}') but returns '{}'; return a collection type or \
             rename the method.",
            m.name.raw(),
            term.lower,
            m.return_type.raw_text
        ),
    ))
}
