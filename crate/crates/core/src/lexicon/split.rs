//! Deterministic identifier splitting.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TermKind {
    Word,
    /// Two or more consecutive uppercase letters kept as one term.
    Acronym,
    Digit,
}

/// One term of a split identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    /// Original spelling inside the identifier.
    pub text: String,
    /// Lowercased spelling; all category and antonym lookups use this.
    pub lower: String,
    pub kind: TermKind,
}

impl Term {
    fn new(text: &str) -> Term {
        let kind = if text.chars().all(|c| c.is_ascii_digit()) {
            TermKind::Digit
        } else if text.chars().count() >= 2 && text.chars().all(|c| c.is_ascii_uppercase()) {
            TermKind::Acronym
        } else {
            TermKind::Word
        };
        Term { text: text.to_string(), lower: text.to_ascii_lowercase(), kind }
    }
}

/// An identifier together with its derived term sequence.
///
/// Invariants: no term is empty; rejoining term texts equals the raw name with
/// separator characters removed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitName {
    raw: String,
    terms: Vec<Term>,
}

impl SplitName {
    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn first(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn last(&self) -> Option<&Term> {
        self.terms.last()
    }

    /// Last word or acronym term, skipping trailing digit terms.
    /// `getEnvironmentVariables2` yields `Variables`.
    pub fn last_noun_term(&self) -> Option<&Term> {
        self.terms.iter().rev().find(|t| t.kind != TermKind::Digit)
    }

    /// True when the raw name is non-empty and made up entirely of characters
    /// outside `[A-Za-z0-9]`.
    pub fn is_all_special(&self) -> bool {
        !self.raw.is_empty() && self.raw.chars().all(|c| !c.is_ascii_alphanumeric())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("cannot split an empty identifier")]
pub struct EmptyName;

/// Splits an identifier into terms at separator characters (`_`, `$`, and any
/// other non-alphanumeric byte), lower-to-upper boundaries, letter/digit
/// boundaries, and acronym boundaries (a run of uppercase followed by
/// Upper+lower splits before the last uppercase).
///
/// A name consisting only of separators yields zero terms, not an error.
pub fn split_identifier(name: &str) -> Result<SplitName, EmptyName> {
    if name.is_empty() {
        return Err(EmptyName);
    }
    let chars: Vec<char> = name.chars().collect();
    let mut terms = Vec::new();
    let mut cur = String::new();

    let flush = |cur: &mut String, terms: &mut Vec<Term>| {
        if !cur.is_empty() {
            terms.push(Term::new(cur));
            cur.clear();
        }
    };

    for i in 0..chars.len() {
        let c = chars[i];
        if !c.is_ascii_alphanumeric() {
            flush(&mut cur, &mut terms);
            continue;
        }
        if !cur.is_empty() {
            let prev = cur.chars().last().unwrap();
            let boundary = (prev.is_ascii_lowercase() && c.is_ascii_uppercase())
                || (prev.is_ascii_alphabetic() && c.is_ascii_digit())
                || (prev.is_ascii_digit() && c.is_ascii_alphabetic())
                || (prev.is_ascii_uppercase()
                    && c.is_ascii_uppercase()
                    && chars.get(i + 1).is_some_and(|n| n.is_ascii_lowercase()));
            if boundary {
                flush(&mut cur, &mut terms);
            }
        }
        cur.push(c);
    }
    flush(&mut cur, &mut terms);

    Ok(SplitName { raw: name.to_string(), terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(name: &str) -> Vec<String> {
        split_identifier(name).unwrap().terms().iter().map(|t| t.text.clone()).collect()
    }

    #[test]
    fn splits_camel_case_with_trailing_digits() {
        assert_eq!(texts("getEnvironmentVariables2"), ["get", "Environment", "Variables", "2"]);
    }

    #[test]
    fn splits_pascal_case() {
        assert_eq!(texts("GetCompletionResult"), ["Get", "Completion", "Result"]);
    }

    #[test]
    fn splits_acronym_before_following_word() {
        assert_eq!(texts("parseXMLDocument"), ["parse", "XML", "Document"]);
    }

    #[test]
    fn underscore_only_name_has_zero_terms() {
        let s = split_identifier("_").unwrap();
        assert!(s.terms().is_empty());
        assert!(s.is_all_special());
    }

    #[test]
    fn empty_name_is_an_error() {
        assert_eq!(split_identifier(""), Err(EmptyName));
    }

    #[test]
    fn splits_at_separators() {
        assert_eq!(texts("max_value$count"), ["max", "value", "count"]);
    }

    #[test]
    fn splits_letter_digit_boundaries_both_ways() {
        assert_eq!(texts("one2Three"), ["one", "2", "Three"]);
        assert_eq!(texts("ONE2THREE"), ["ONE", "2", "THREE"]);
    }

    #[test]
    fn single_trailing_upper_is_its_own_word() {
        assert_eq!(texts("AxelF"), ["Axel", "F"]);
        let s = split_identifier("AxelF").unwrap();
        assert_eq!(s.terms()[1].kind, TermKind::Word);
    }

    #[test]
    fn term_kinds_are_classified() {
        let s = split_identifier("parseXML2").unwrap();
        let kinds: Vec<TermKind> = s.terms().iter().map(|t| t.kind).collect();
        assert_eq!(kinds, [TermKind::Word, TermKind::Acronym, TermKind::Digit]);
    }

    #[test]
    fn last_noun_term_skips_trailing_digits() {
        let s = split_identifier("getEnvironmentVariables2").unwrap();
        assert_eq!(s.last_noun_term().unwrap().lower, "variables");
        assert!(split_identifier("v2").unwrap().last_noun_term().is_some());
        assert!(split_identifier("42").unwrap().last_noun_term().is_none());
    }

    #[test]
    fn rejoin_equals_raw_minus_separators() {
        for name in ["getEnvironmentVariables2", "a_b$c", "__x__", "parseXMLDocument"] {
            let s = split_identifier(name).unwrap();
            let rejoined: String = s.terms().iter().map(|t| t.text.as_str()).collect();
            let stripped: String = name.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
            assert_eq!(rejoined, stripped, "round-trip failed for {name}");
        }
    }

    #[test]
    fn no_term_is_empty() {
        for name in ["_", "a__b", "$", "x$", "$x"] {
            let s = split_identifier(name).unwrap();
            assert!(s.terms().iter().all(|t| !t.text.is_empty()));
        }
    }
}
