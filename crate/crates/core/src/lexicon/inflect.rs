//! Singular/plural detection for name terms.

use std::collections::{BTreeMap, BTreeSet};

/// Irregular singular/plural pairs. `data` defaults to plural; projects that
/// treat it as a mass noun list it under `plural_exceptions` instead.
pub const IRREGULAR_PLURALS: &[(&str, &str)] = &[
    ("child", "children"),
    ("person", "people"),
    ("man", "men"),
    ("woman", "women"),
    ("foot", "feet"),
    ("tooth", "teeth"),
    ("goose", "geese"),
    ("mouse", "mice"),
    ("index", "indices"),
    ("vertex", "vertices"),
    ("matrix", "matrices"),
    ("datum", "data"),
    ("criterion", "criteria"),
    ("phenomenon", "phenomena"),
    ("medium", "media"),
    ("radius", "radii"),
    ("leaf", "leaves"),
    ("life", "lives"),
    ("half", "halves"),
    ("knife", "knives"),
    ("shelf", "shelves"),
    ("self", "selves"),
    ("wolf", "wolves"),
    ("analysis", "analyses"),
    ("basis", "bases"),
    ("crisis", "crises"),
    ("thesis", "theses"),
];

/// Words ending in a bare `s` that are nevertheless singular. Terms ending in
/// `ss`, `us`, or `is` are already treated as singular by rule.
pub const PLURAL_EXCEPTIONS: &[&str] = &[
    "status", "alias", "atlas", "bias", "canvas", "gas", "lens", "news", "chaos", "cosmos",
    "ethos", "pathos", "mathematics", "physics",
];

/// Plural test over lowercased terms.
///
/// Exceptions take priority over everything else, so a project can demote any
/// default (including irregulars like `data`) via config. Otherwise a term is
/// plural when it is a known irregular plural, or ends in `s` without ending
/// in `ss`, `us`, or `is`.
pub fn is_plural(
    term: &str,
    irregular_plurals: &BTreeMap<String, String>,
    plural_exceptions: &BTreeSet<String>,
) -> bool {
    if plural_exceptions.contains(term) {
        return false;
    }
    if irregular_plurals.values().any(|p| p == term) {
        return true;
    }
    term.ends_with('s')
        && !term.ends_with("ss")
        && !term.ends_with("us")
        && !term.ends_with("is")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn defaults() -> (BTreeMap<String, String>, BTreeSet<String>) {
        let irr = IRREGULAR_PLURALS
            .iter()
            .map(|(s, p)| (s.to_string(), p.to_string()))
            .collect();
        let exc = PLURAL_EXCEPTIONS.iter().map(|s| s.to_string()).collect();
        (irr, exc)
    }

    #[test]
    fn common_plurals_detected() {
        let (irr, exc) = defaults();
        assert!(is_plural("variables", &irr, &exc));
        assert!(is_plural("names", &irr, &exc));
        assert!(is_plural("children", &irr, &exc));
        assert!(is_plural("indices", &irr, &exc));
    }

    #[test]
    fn status_is_singular() {
        let (irr, exc) = defaults();
        assert!(!is_plural("status", &irr, &exc));
    }

    #[test]
    fn suffix_exclusions_are_singular() {
        let (irr, exc) = defaults();
        for t in ["class", "address", "bus", "corpus", "axis", "basis"] {
            assert!(!is_plural(t, &irr, &exc), "{t} misclassified as plural");
        }
    }

    #[test]
    fn data_is_plural_by_default_but_demotable() {
        let (irr, mut exc) = defaults();
        assert!(is_plural("data", &irr, &exc));
        exc.insert("data".to_string());
        assert!(!is_plural("data", &irr, &exc));
    }

    #[test]
    fn exceptions_never_coexist_with_plural() {
        let (irr, exc) = defaults();
        for t in exc.iter() {
            assert!(!is_plural(t, &irr, &exc));
        }
    }

    #[test]
    fn singular_words_stay_singular() {
        let (irr, exc) = defaults();
        for t in ["name", "item", "value", "result", "end", "min"] {
            assert!(!is_plural(t, &irr, &exc));
        }
    }
}
