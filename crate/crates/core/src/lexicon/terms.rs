//! Term categories and the configurable term lexicon.

use std::collections::{BTreeMap, BTreeSet};

use crate::lexicon::inflect;
use crate::lexicon::split::{SplitName, Term};

/// Semantic buckets a name term can belong to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TermCategory {
    Get,
    Set,
    Predicate,
    Validation,
    Transformation,
    Conditional,
    CollectionWord,
}

impl TermCategory {
    pub const ALL: [TermCategory; 7] = [
        TermCategory::Get,
        TermCategory::Set,
        TermCategory::Predicate,
        TermCategory::Validation,
        TermCategory::Transformation,
        TermCategory::Conditional,
        TermCategory::CollectionWord,
    ];

    /// Key used in config files for this category.
    pub fn key(&self) -> &'static str {
        match self {
            TermCategory::Get => "get",
            TermCategory::Set => "set",
            TermCategory::Predicate => "predicate",
            TermCategory::Validation => "validation",
            TermCategory::Transformation => "transformation",
            TermCategory::Conditional => "conditional",
            TermCategory::CollectionWord => "collection_word",
        }
    }

    pub fn from_key(key: &str) -> Option<TermCategory> {
        TermCategory::ALL.iter().copied().find(|c| c.key() == key)
    }

    fn defaults(&self) -> &'static [&'static str] {
        match self {
            TermCategory::Get => &["get", "fetch", "retrieve", "obtain", "find", "return"],
            TermCategory::Set => &["set"],
            TermCategory::Predicate => &[
                "is", "has", "have", "can", "could", "should", "was", "were", "are", "will",
                "contains", "supports", "exists",
            ],
            TermCategory::Validation => &["validate", "check", "ensure", "verify", "assert"],
            TermCategory::Transformation => &[
                "to", "convert", "transform", "translate", "adapt", "encode", "decode", "parse",
                "format",
            ],
            TermCategory::Conditional => &["if", "when", "whether", "unless", "case"],
            TermCategory::CollectionWord => &[
                "list", "set", "map", "array", "collection", "queue", "stack", "vector", "table",
                "dictionary", "batch", "group",
            ],
        }
    }
}

/// Where in the term sequence a category lookup applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermPosition {
    First,
    Any,
    /// Strictly between first and last. A two-term name has no inner terms.
    Inner,
    Last,
}

/// Category membership plus plural data, seeded from defaults and reshaped by
/// per-project config.
#[derive(Debug, Clone)]
pub struct TermLexicon {
    categories: BTreeMap<TermCategory, BTreeSet<String>>,
    irregular_plurals: BTreeMap<String, String>,
    plural_exceptions: BTreeSet<String>,
}

impl Default for TermLexicon {
    fn default() -> Self {
        let categories = TermCategory::ALL
            .iter()
            .map(|c| (*c, c.defaults().iter().map(|s| s.to_string()).collect()))
            .collect();
        TermLexicon {
            categories,
            irregular_plurals: inflect::IRREGULAR_PLURALS
                .iter()
                .map(|(s, p)| (s.to_string(), p.to_string()))
                .collect(),
            plural_exceptions: inflect::PLURAL_EXCEPTIONS
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

impl TermLexicon {
    /// Adds a term to a category. Terms are stored lowercased.
    pub fn add_term(&mut self, cat: TermCategory, term: &str) {
        self.categories
            .get_mut(&cat)
            .expect("all categories present")
            .insert(term.to_ascii_lowercase());
    }

    /// Removes a term from a category. Returns false when the term was not
    /// present (callers surface that as a warning, not an error).
    pub fn remove_term(&mut self, cat: TermCategory, term: &str) -> bool {
        self.categories
            .get_mut(&cat)
            .expect("all categories present")
            .remove(&term.to_ascii_lowercase())
    }

    pub fn add_plural_exception(&mut self, term: &str) {
        self.plural_exceptions.insert(term.to_ascii_lowercase());
    }

    pub fn contains(&self, cat: TermCategory, term: &str) -> bool {
        self.categories[&cat].contains(term)
    }

    /// First term of `name` matching `cat` at `pos`, if any.
    pub fn find_category<'n>(
        &self,
        name: &'n SplitName,
        cat: TermCategory,
        pos: TermPosition,
    ) -> Option<&'n Term> {
        let terms = name.terms();
        let set = &self.categories[&cat];
        let hit = |t: &Term| set.contains(&t.lower);
        match pos {
            TermPosition::First => terms.first().filter(|t| hit(t)),
            TermPosition::Last => terms.last().filter(|t| hit(t)),
            TermPosition::Any => terms.iter().find(|t| hit(t)),
            TermPosition::Inner => {
                if terms.len() < 3 {
                    None
                } else {
                    terms[1..terms.len() - 1].iter().find(|t| hit(t))
                }
            }
        }
    }

    pub fn has_category(&self, name: &SplitName, cat: TermCategory, pos: TermPosition) -> bool {
        self.find_category(name, cat, pos).is_some()
    }

    /// Plural test over a lowercased term.
    pub fn is_plural(&self, term: &str) -> bool {
        inflect::is_plural(term, &self.irregular_plurals, &self.plural_exceptions)
    }

    /// First plural term or collection word in `name`, if any.
    pub fn find_plural_or_collection_term<'n>(&self, name: &'n SplitName) -> Option<&'n Term> {
        name.terms().iter().find(|t| {
            self.is_plural(&t.lower) || self.contains(TermCategory::CollectionWord, &t.lower)
        })
    }
}
