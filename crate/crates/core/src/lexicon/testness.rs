//! Test-method classification.

use std::collections::BTreeSet;

use crate::model::Language;

/// Default annotation simple names that mark a method as a test.
pub fn default_test_annotations(language: Language) -> &'static [&'static str] {
    match language {
        Language::Java => &["Test", "ParameterizedTest", "RepeatedTest"],
        Language::CSharp => &["Test", "TestMethod", "Fact", "Theory"],
    }
}

/// Per-language test recognition: annotation names plus optional method-name
/// glob patterns. Patterns default to empty, so recognition is
/// annotation-only unless a project opts in.
#[derive(Debug, Clone)]
pub struct TestConfig {
    annotations: BTreeSet<String>,
    name_patterns: Vec<String>,
}

impl TestConfig {
    pub fn new(language: Language) -> TestConfig {
        TestConfig {
            annotations: default_test_annotations(language)
                .iter()
                .map(|s| s.to_string())
                .collect(),
            name_patterns: Vec::new(),
        }
    }

    pub fn add_annotation(&mut self, name: &str) {
        self.annotations.insert(name.to_string());
    }

    pub fn add_name_pattern(&mut self, pattern: &str) {
        self.name_patterns.push(pattern.to_string());
    }

    /// True when any annotation simple name is recognized or the method name
    /// matches a configured pattern.
    pub fn is_test_method(&self, method_name: &str, annotations: &[String]) -> bool {
        annotations.iter().any(|a| self.annotations.contains(simple_name(a)))
            || self.name_patterns.iter().any(|p| glob_match(p, method_name))
    }
}

/// Last dot-separated segment, so `org.junit.Test` matches `Test`.
fn simple_name(annotation: &str) -> &str {
    annotation.rsplit('.').next().unwrap_or(annotation)
}

/// Minimal glob: `*` matches any run of characters, everything else is
/// literal. Sufficient for patterns like `test*` or `*Spec`.
pub fn glob_match(pattern: &str, text: &str) -> bool {
    fn inner(p: &[u8], t: &[u8]) -> bool {
        match p.first() {
            None => t.is_empty(),
            Some(b'*') => {
                (0..=t.len()).any(|skip| inner(&p[1..], &t[skip..]))
            }
            Some(c) => t.first() == Some(c) && inner(&p[1..], &t[1..]),
        }
    }
    inner(pattern.as_bytes(), text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn owned(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn annotated_methods_are_tests() {
        let cfg = TestConfig::new(Language::Java);
        assert!(cfg.is_test_method("testLogin", &owned(&["Test"])));
        assert!(cfg.is_test_method("whatever", &owned(&["ParameterizedTest"])));
        assert!(!cfg.is_test_method("testLogin", &owned(&["Override"])));
    }

    #[test]
    fn unannotated_test_names_are_not_tests_by_default() {
        let cfg = TestConfig::new(Language::Java);
        assert!(!cfg.is_test_method("testLogin", &[]));
    }

    #[test]
    fn csharp_defaults_cover_common_frameworks() {
        let cfg = TestConfig::new(Language::CSharp);
        for a in ["Fact", "Theory", "TestMethod", "Test"] {
            assert!(cfg.is_test_method("M", &owned(&[a])), "{a} not recognized");
        }
    }

    #[test]
    fn qualified_annotations_match_by_simple_name() {
        let cfg = TestConfig::new(Language::Java);
        assert!(cfg.is_test_method("m", &owned(&["org.junit.jupiter.api.Test"])));
    }

    #[test]
    fn name_patterns_opt_in() {
        let mut cfg = TestConfig::new(Language::Java);
        cfg.add_name_pattern("test*");
        assert!(cfg.is_test_method("testLogin", &[]));
        assert!(!cfg.is_test_method("loginTest", &[]));
    }

    #[test]
    fn extra_annotations_extend_recognition() {
        let mut cfg = TestConfig::new(Language::Java);
        cfg.add_annotation("IntegrationTest");
        assert!(cfg.is_test_method("m", &owned(&["IntegrationTest"])));
    }

    #[test]
    fn glob_semantics() {
        assert!(glob_match("test*", "testLogin"));
        assert!(glob_match("*Spec", "LoginSpec"));
        assert!(glob_match("*", "anything"));
        assert!(glob_match("exact", "exact"));
        assert!(!glob_match("test*", "mytest"));
        assert!(!glob_match("", "x"));
    }
}
