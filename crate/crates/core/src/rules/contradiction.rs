//! Antonym contradiction rules: C.1/C.2 for methods, F.1/F.2 for data.

use crate::lexicon::{split_identifier, Lexicons, SplitName};
use crate::model::{DataEntity, MethodEntity, TypeRef};
use crate::rules::{violation, EntityKind, Evidence, EvidenceValue, RuleId, Violation};

/// Lowercased terms of a type's base name, empty when the type is nameless.
fn type_terms(t: &TypeRef) -> Vec<String> {
    if t.base_name.is_empty() {
        return Vec::new();
    }
    split_identifier(&t.base_name)
        .map(|s| s.terms().iter().map(|t| t.lower.clone()).collect())
        .unwrap_or_default()
}

fn name_terms(name: &SplitName) -> Vec<String> {
    name.terms().iter().map(|t| t.lower.clone()).collect()
}

/// First antonym pair between two term lists, in (left, right) order.
fn find_pair(left: &[String], right: &[String], lex: &Lexicons) -> Option<(String, String)> {
    for a in left {
        for b in right {
            if let Some(pair) = lex.antonyms.find_antonym(a, b) {
                return Some(pair);
            }
        }
    }
    None
}

fn pair_evidence(pair: &(String, String)) -> Evidence {
    let mut ev = Evidence::new();
    ev.insert("antonym_pair".into(), EvidenceValue::pair(&pair.0, &pair.1));
    ev
}

/// C.1: method name and return type contain opposite terms. Skips tests.
pub fn c1(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let pair = find_pair(&name_terms(&m.name), &type_terms(&m.return_type), lex)?;
    Some(violation(
        RuleId::C1,
        EntityKind::Method,
        m.name.raw(),
        &m.location,
        &m.return_type.raw_text,
        pair_evidence(&pair),
        format!(
            "'{}' and its return type '{}' pull in opposite directions ('{}' vs '{}'); \
             align the name with what it returns.",
            m.name.raw(),
            m.return_type.raw_text,
            pair.0,
            pair.1
        ),
    ))
}

/// C.2: method name or return type contradicts the associated comment.
/// Skips tests.
pub fn c2(m: &MethodEntity, lex: &Lexicons) -> Option<Violation> {
    if m.is_test {
        return None;
    }
    let comment = m.comment.as_ref()?;
    let mut signature = name_terms(&m.name);
    signature.extend(type_terms(&m.return_type));
    let tokens = lex.antonyms.comment_tokens(&comment.text);
    let pair = find_pair(&signature, &tokens, lex)?;
    Some(violation(
        RuleId::C2,
        EntityKind::Method,
        m.name.raw(),
        &m.location,
        &m.return_type.raw_text,
        pair_evidence(&pair),
        format!(
            "'{}' contradicts its comment ('{}' vs '{}'); fix whichever side is wrong.",
            m.name.raw(),
            pair.0,
            pair.1
        ),
    ))
}

/// F.1: data entity name and declared type contain opposite terms.
pub fn f1(d: &DataEntity, lex: &Lexicons) -> Option<Violation> {
    let pair = find_pair(&name_terms(&d.name), &type_terms(&d.data_type), lex)?;
    Some(violation(
        RuleId::F1,
        d.kind.into(),
        d.name.raw(),
        &d.location,
        &d.data_type.raw_text,
        pair_evidence(&pair),
        format!(
            "'{}' and its type '{}' pull in opposite directions ('{}' vs '{}'); rename one side.",
            d.name.raw(),
            d.data_type.raw_text,
            pair.0,
            pair.1
        ),
    ))
}

/// F.2: data entity name or type contradicts the associated comment.
pub fn f2(d: &DataEntity, lex: &Lexicons) -> Option<Violation> {
    let comment = d.comment.as_ref()?;
    let mut signature = name_terms(&d.name);
    signature.extend(type_terms(&d.data_type));
    let tokens = lex.antonyms.comment_tokens(&comment.text);
    let pair = find_pair(&signature, &tokens, lex)?;
    Some(violation(
        RuleId::F2,
        d.kind.into(),
        d.name.raw(),
        &d.location,
        &d.data_type.raw_text,
        pair_evidence(&pair),
        format!(
            "'{}' contradicts its comment ('{}' vs '{}'); fix whichever side is wrong.",
            d.name.raw(),
            pair.0,
            pair.1
        ),
    ))
}
