//! Per-project configuration: loading, validation, and lexicon assembly.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{Lexicons, TermCategory};
use crate::model::Language;
use crate::rules::RuleSet;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &str, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { path: path.to_string(), message: message.into() }
}

/// Terms added to or removed from one category.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TermOverride {
    pub add: Vec<String>,
    pub remove: Vec<String>,
}

/// Rule selection lists. When `enable` is non-empty only those rules run;
/// `disable` always subtracts. Entries are ids or group globs (`B.*`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RulesSelection {
    pub enable: Vec<String>,
    pub disable: Vec<String>,
}

/// Additions applied on top of the global config for one language.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct LanguageOverride {
    pub collection_types: Vec<String>,
    pub test_annotations: Vec<String>,
    pub test_name_patterns: Vec<String>,
}

/// A project's configuration file. Every field has a default, so `{}` and a
/// missing file both mean "defaults". Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ProjectConfig {
    /// Schema version; only 1 is accepted.
    pub config_version: u32,
    /// Type base names treated as collections in both languages.
    pub collection_types: Vec<String>,
    /// Keyed by category: get, set, predicate, validation, transformation,
    /// conditional, collection_word.
    pub term_overrides: BTreeMap<String, TermOverride>,
    pub antonym_extra_pairs: Vec<Vec<String>>,
    pub antonym_ignore_pairs: Vec<Vec<String>>,
    pub plural_exceptions: Vec<String>,
    pub test_annotations: Vec<String>,
    pub test_name_patterns: Vec<String>,
    pub rules: RulesSelection,
    /// Keyed by language: java, csharp.
    pub language_overrides: BTreeMap<String, LanguageOverride>,
}

impl Default for ProjectConfig {
    fn default() -> Self {
        ProjectConfig {
            config_version: 1,
            collection_types: Vec::new(),
            term_overrides: BTreeMap::new(),
            antonym_extra_pairs: Vec::new(),
            antonym_ignore_pairs: Vec::new(),
            plural_exceptions: Vec::new(),
            test_annotations: Vec::new(),
            test_name_patterns: Vec::new(),
            rules: RulesSelection::default(),
            language_overrides: BTreeMap::new(),
        }
    }
}

const LANGUAGE_KEYS: [(&str, Language); 2] =
    [("java", Language::Java), ("csharp", Language::CSharp)];

/// Loads and validates a TOML config file. The result is the file's contents
/// merged over defaults; validation failures carry the file path and key.
pub fn load_config(path: &Path) -> Result<ProjectConfig, ConfigError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|source| ConfigError::Io { path: display.clone(), source })?;
    let config: ProjectConfig =
        toml::from_str(&text).map_err(|e| invalid(&display, e.to_string()))?;
    validate(&config, &display)?;
    Ok(config)
}

/// Structural validation beyond what deserialization enforces.
pub fn validate(config: &ProjectConfig, path: &str) -> Result<(), ConfigError> {
    if config.config_version != 1 {
        return Err(invalid(
            path,
            format!("config_version: expected 1, found {}", config.config_version),
        ));
    }
    for key in config.term_overrides.keys() {
        if TermCategory::from_key(key).is_none() {
            let known: Vec<&str> = TermCategory::ALL.iter().map(|c| c.key()).collect();
            return Err(invalid(
                path,
                format!("term_overrides.{key}: unknown category (expected one of {known:?})"),
            ));
        }
    }
    for (field, pairs) in [
        ("antonym_extra_pairs", &config.antonym_extra_pairs),
        ("antonym_ignore_pairs", &config.antonym_ignore_pairs),
    ] {
        for (i, pair) in pairs.iter().enumerate() {
            if pair.len() != 2 || pair.iter().any(|t| t.trim().is_empty()) {
                return Err(invalid(
                    path,
                    format!("{field}[{i}]: a pair must be exactly two non-empty terms"),
                ));
            }
        }
    }
    for pattern in config.rules.enable.iter().chain(&config.rules.disable) {
        crate::rules::expand_rule_pattern(pattern)
            .map_err(|e| invalid(path, format!("rules: {e}")))?;
    }
    for key in config.language_overrides.keys() {
        if !LANGUAGE_KEYS.iter().any(|(k, _)| k == key) {
            return Err(invalid(
                path,
                format!("language_overrides.{key}: unknown language (expected java or csharp)"),
            ));
        }
    }
    for (i, p) in config.test_name_patterns.iter().enumerate() {
        if p.trim().is_empty() {
            return Err(invalid(path, format!("test_name_patterns[{i}]: empty pattern")));
        }
    }
    Ok(())
}

/// Config resolved into ready-to-use per-language lexicons and a rule set.
#[derive(Debug, Clone)]
pub struct Resolved {
    pub java: Lexicons,
    pub csharp: Lexicons,
    pub rules: RuleSet,
    /// Non-fatal notes, e.g. removal of a term that was not present.
    pub warnings: Vec<String>,
}

impl Resolved {
    pub fn lexicons(&self, language: Language) -> &Lexicons {
        match language {
            Language::Java => &self.java,
            Language::CSharp => &self.csharp,
        }
    }
}

/// Builds per-language lexicons and the rule set from a validated config.
pub fn resolve(config: &ProjectConfig) -> Result<Resolved, ConfigError> {
    validate(config, "<config>")?;
    let mut warnings = Vec::new();

    let mut build = |language: Language, key: &str| {
        let mut lex = Lexicons::with_defaults(language);
        for (cat_key, over) in &config.term_overrides {
            let cat = TermCategory::from_key(cat_key).expect("validated");
            for term in &over.add {
                lex.terms.add_term(cat, term);
            }
            for term in &over.remove {
                if !lex.terms.remove_term(cat, term) {
                    warnings.push(format!(
                        "term_overrides.{cat_key}: removing '{term}', which is not in the \
                         category; nothing to do"
                    ));
                }
            }
        }
        for term in &config.plural_exceptions {
            lex.terms.add_plural_exception(term);
        }
        for pair in &config.antonym_extra_pairs {
            lex.antonyms.add_pair(&pair[0], &pair[1]);
        }
        for pair in &config.antonym_ignore_pairs {
            lex.antonyms.ignore_pair(&pair[0], &pair[1]);
        }
        for name in &config.collection_types {
            lex.types.add_collection(name);
        }
        for name in &config.test_annotations {
            lex.test.add_annotation(name);
        }
        for pattern in &config.test_name_patterns {
            lex.test.add_name_pattern(pattern);
        }
        if let Some(over) = config.language_overrides.get(key) {
            for name in &over.collection_types {
                lex.types.add_collection(name);
            }
            for name in &over.test_annotations {
                lex.test.add_annotation(name);
            }
            for pattern in &over.test_name_patterns {
                lex.test.add_name_pattern(pattern);
            }
        }
        lex
    };

    let java = build(Language::Java, "java");
    let csharp = build(Language::CSharp, "csharp");
    let rules = RuleSet::from_patterns(&config.rules.enable, &config.rules.disable)
        .expect("rule patterns validated");
    Ok(Resolved { java, csharp, rules, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::{TermCategory, TermPosition};
    use crate::model::TypeClass;
    use crate::rules::RuleId;

    #[test]
    fn empty_config_is_the_default_fixed_point() {
        let parsed: ProjectConfig = toml::from_str("").unwrap();
        assert_eq!(parsed, ProjectConfig::default());
        let rendered = toml::to_string(&parsed).unwrap();
        let reparsed: ProjectConfig = toml::from_str(&rendered).unwrap();
        assert_eq!(reparsed, parsed);
    }

    #[test]
    fn full_config_round_trips_through_toml() {
        let text = r#"
            config_version = 1
            collection_types = ["EnvVars"]
            antonym_extra_pairs = [["alpha", "omega"]]
            antonym_ignore_pairs = [["get", "result"]]
            plural_exceptions = ["data"]
            test_annotations = ["IntegrationTest"]
            test_name_patterns = ["test*"]

            [term_overrides.predicate]
            add = ["looks"]
            remove = ["was"]

            [rules]
            disable = ["C.2"]

            [language_overrides.java]
            collection_types = ["ImmutableList"]
        "#;
        let parsed: ProjectConfig = toml::from_str(text).unwrap();
        validate(&parsed, "inline").unwrap();
        let rendered = toml::to_string(&parsed).unwrap();
        let reparsed: ProjectConfig = toml::from_str(&rendered).unwrap();
        assert_eq!(reparsed, parsed, "serialize/parse must be a fixed point");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = toml::from_str::<ProjectConfig>("colection_types = []").unwrap_err();
        assert!(err.to_string().contains("colection_types"), "{err}");
    }

    #[test]
    fn bad_rule_id_is_rejected_with_key() {
        let cfg: ProjectConfig = toml::from_str("[rules]\ndisable = [\"C.9\"]").unwrap();
        let err = validate(&cfg, "cfg.toml").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("cfg.toml") && msg.contains("C.9"), "{msg}");
    }

    #[test]
    fn malformed_pair_is_rejected_with_index() {
        let cfg: ProjectConfig =
            toml::from_str("antonym_extra_pairs = [[\"a\", \"b\"], [\"c\"]]").unwrap();
        let err = validate(&cfg, "cfg.toml").unwrap_err();
        assert!(err.to_string().contains("antonym_extra_pairs[1]"), "{err}");
    }

    #[test]
    fn unknown_category_and_language_are_rejected() {
        let cfg: ProjectConfig = toml::from_str("[term_overrides.nouns]\nadd = [\"x\"]").unwrap();
        assert!(validate(&cfg, "c").is_err());
        let cfg: ProjectConfig =
            toml::from_str("[language_overrides.python]\ncollection_types = []").unwrap();
        assert!(validate(&cfg, "c").is_err());
    }

    #[test]
    fn wrong_version_is_rejected() {
        let cfg: ProjectConfig = toml::from_str("config_version = 2").unwrap();
        let err = validate(&cfg, "c").unwrap_err();
        assert!(err.to_string().contains("config_version"), "{err}");
    }

    #[test]
    fn resolve_applies_overrides_per_language() {
        let text = r#"
            collection_types = ["EnvVars"]
            [language_overrides.java]
            collection_types = ["ImmutableList"]
        "#;
        let cfg: ProjectConfig = toml::from_str(text).unwrap();
        let resolved = resolve(&cfg).unwrap();
        assert_eq!(resolved.java.types.classify("EnvVars", 0), TypeClass::Collection);
        assert_eq!(resolved.csharp.types.classify("EnvVars", 0), TypeClass::Collection);
        assert_eq!(resolved.java.types.classify("ImmutableList", 0), TypeClass::Collection);
        assert_eq!(resolved.csharp.types.classify("ImmutableList", 0), TypeClass::Scalar);
    }

    #[test]
    fn resolve_reshapes_terms_and_warns_on_absent_removal() {
        let text = r#"
            [term_overrides.predicate]
            add = ["looks"]
            remove = ["was", "absent"]
        "#;
        let cfg: ProjectConfig = toml::from_str(text).unwrap();
        let resolved = resolve(&cfg).unwrap();
        assert!(resolved.java.terms.contains(TermCategory::Predicate, "looks"));
        assert!(!resolved.java.terms.contains(TermCategory::Predicate, "was"));
        // One warning per language build; both mention the absent term.
        assert!(resolved.warnings.iter().all(|w| w.contains("absent")));
        assert!(!resolved.warnings.is_empty());
    }

    #[test]
    fn resolve_builds_ruleset() {
        let cfg: ProjectConfig = toml::from_str("[rules]\ndisable = [\"C.*\"]").unwrap();
        let resolved = resolve(&cfg).unwrap();
        assert!(!resolved.rules.is_enabled(RuleId::C1));
        assert!(!resolved.rules.is_enabled(RuleId::C2));
        assert!(resolved.rules.is_enabled(RuleId::B1));
    }

    #[test]
    fn ignore_pair_suppresses_defaults() {
        let cfg: ProjectConfig =
            toml::from_str("antonym_ignore_pairs = [[\"get\", \"result\"]]").unwrap();
        let resolved = resolve(&cfg).unwrap();
        assert!(!resolved.java.antonyms.are_antonyms("get", "result"));
        assert!(resolved.java.antonyms.are_antonyms("get", "set"));
    }

    #[test]
    fn default_position_helpers_work_via_resolved() {
        let resolved = resolve(&ProjectConfig::default()).unwrap();
        let name = crate::lexicon::split_identifier("setName").unwrap();
        assert!(resolved
            .java
            .terms
            .has_category(&name, TermCategory::Set, TermPosition::First));
    }
}
