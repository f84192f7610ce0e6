//! Antonym pairs with light lemmatization, used by the contradiction rules.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

const PAIRS_DATA: &str = include_str!("data/antonym_pairs.txt");
const LEMMA_DATA: &str = include_str!("data/lemma_exceptions.txt");
const STOPWORDS_DATA: &str = include_str!("data/stopwords.txt");

/// Suffixes stripped during lemmatization, tried in this order.
const SUFFIXES: [&str; 4] = ["s", "ed", "ing", "d"];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AntonymDataError {
    #[error("line {line}: expected two tab-separated terms, found {found}")]
    BadPair { line: usize, found: usize },
    #[error("line {line}: empty term")]
    EmptyTerm { line: usize },
}

/// Parses `term<TAB>term` lines. `#` comments and blank lines are skipped.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>, AntonymDataError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        // Split the raw line so an empty field next to a tab is reported as
        // an empty term, not as a missing one.
        let fields: Vec<&str> = raw.trim_end_matches(['\r', '\n']).split('\t').collect();
        if fields.len() != 2 {
            return Err(AntonymDataError::BadPair { line, found: fields.len() });
        }
        if fields.iter().any(|f| f.trim().is_empty()) {
            return Err(AntonymDataError::EmptyTerm { line });
        }
        pairs.push((
            fields[0].trim().to_ascii_lowercase(),
            fields[1].trim().to_ascii_lowercase(),
        ));
    }
    Ok(pairs)
}

fn parse_lemmas(text: &str) -> BTreeMap<String, String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .filter_map(|l| {
            let (w, lemma) = l.split_once('\t')?;
            Some((w.trim().to_ascii_lowercase(), lemma.trim().to_ascii_lowercase()))
        })
        .collect()
}

fn parse_words(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.to_ascii_lowercase())
        .collect()
}

/// Symmetric antonym relation over unordered lemma pairs.
#[derive(Debug, Clone)]
pub struct AntonymLexicon {
    pairs: BTreeSet<(String, String)>,
    ignored: BTreeSet<(String, String)>,
    lemma_table: BTreeMap<String, String>,
    stopwords: BTreeSet<String>,
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl Default for AntonymLexicon {
    fn default() -> Self {
        let pairs = parse_pairs(PAIRS_DATA).expect("embedded antonym data is well-formed");
        AntonymLexicon {
            pairs: pairs.iter().map(|(a, b)| key(a, b)).collect(),
            ignored: BTreeSet::new(),
            lemma_table: parse_lemmas(LEMMA_DATA),
            stopwords: parse_words(STOPWORDS_DATA),
        }
    }
}

impl AntonymLexicon {
    pub fn add_pair(&mut self, a: &str, b: &str) {
        self.pairs.insert(key(&a.to_ascii_lowercase(), &b.to_ascii_lowercase()));
    }

    /// Suppresses a pair. The pair stays in the lexicon; lookups skip it.
    pub fn ignore_pair(&mut self, a: &str, b: &str) {
        self.ignored.insert(key(&a.to_ascii_lowercase(), &b.to_ascii_lowercase()));
    }

    /// Candidate lemmas for a word, most specific first. A word in the
    /// exception table maps to exactly its table lemma; otherwise the word
    /// itself plus every suffix-stripped form at least two characters long.
    pub fn lemma_candidates(&self, word: &str) -> Vec<String> {
        let w = word.to_ascii_lowercase();
        if let Some(lemma) = self.lemma_table.get(&w) {
            return vec![lemma.clone()];
        }
        let mut out = vec![w.clone()];
        for suffix in SUFFIXES {
            if let Some(stem) = w.strip_suffix(suffix) {
                if stem.len() >= 2 && !out.iter().any(|c| c == stem) {
                    out.push(stem.to_string());
                }
            }
        }
        out
    }

    /// The matched lemma pair for two words, in argument order, or None.
    /// A word is never its own antonym.
    pub fn find_antonym(&self, a: &str, b: &str) -> Option<(String, String)> {
        for ca in self.lemma_candidates(a) {
            for cb in self.lemma_candidates(b) {
                if ca != cb
                    && self.pairs.contains(&key(&ca, &cb))
                    && !self.ignored.contains(&key(&ca, &cb))
                {
                    return Some((ca, cb));
                }
            }
        }
        None
    }

    pub fn are_antonyms(&self, a: &str, b: &str) -> bool {
        self.find_antonym(a, b).is_some()
    }

    pub fn is_stopword(&self, word: &str) -> bool {
        self.stopwords.contains(word)
    }

    /// Lowercased word tokens of a comment, stopwords and pure numbers
    /// removed. Used by the comment-contradiction rules.
    pub fn comment_tokens(&self, text: &str) -> Vec<String> {
        tokenize_words(text)
            .into_iter()
            .filter(|t| !self.stopwords.contains(t))
            .collect()
    }

    #[cfg(test)]
    fn pair_lemmas(&self) -> BTreeSet<&String> {
        self.pairs.iter().flat_map(|(a, b)| [a, b]).collect()
    }

    #[cfg(test)]
    fn stopword_set(&self) -> &BTreeSet<String> {
        &self.stopwords
    }
}

/// Lowercased alphanumeric word tokens, pure numbers dropped. No stopword
/// filtering; callers that need it use `comment_tokens`.
pub fn tokenize_words(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_ascii_alphanumeric())
        .filter(|t| !t.is_empty() && !t.chars().all(|c| c.is_ascii_digit()))
        .map(|t| t.to_ascii_lowercase())
        .collect()
}
