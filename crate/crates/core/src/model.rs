//! Code model shared by ingestion and the rule engine.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::lexicon::split::SplitName;

/// Source language of a unit. Only these two are analyzed; units tagged with
/// anything else are skipped with a warning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Language {
    Java,
    CSharp,
}

impl Language {
    /// Maps a srcML `language` attribute value. Returns None for languages the
    /// tool does not analyze (C, C++, ...).
    pub fn from_srcml(attr: &str) -> Option<Language> {
        match attr {
            "Java" => Some(Language::Java),
            "C#" => Some(Language::CSharp),
            _ => None,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Language::Java => "Java",
            Language::CSharp => "C#",
        }
    }
}

/// Position of a declared name inside its source file. Lines and columns are
/// 1-based; column falls back to 1 when the archive carries no position info.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Location {
    pub file: String,
    pub line: u32,
    pub column: u32,
}

/// How a declared type participates in rule checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TypeClass {
    Void,
    Boolean,
    Collection,
    Scalar,
    /// Reserved for types carrying no resolvable name: `var`, `dynamic`,
    /// missing type text, constructor pseudo-returns. Rules that assert a type
    /// is NOT something stay silent on unknowns.
    Unknown,
}

/// A declared type as written in source, plus its derived classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeRef {
    /// Full source spelling, e.g. `List<String>` or `int[]`.
    pub raw_text: String,
    /// Simple name with generics, array markers, and qualifiers stripped.
    /// Invariant: contains none of `<`, `>`, `[`, `]`.
    pub base_name: String,
    pub type_arguments: Vec<TypeRef>,
    pub array_dimensions: u8,
    pub classification: TypeClass,
}

impl TypeRef {
    /// Placeholder for declarations with no usable type (constructors).
    pub fn unknown() -> TypeRef {
        TypeRef {
            raw_text: String::new(),
            base_name: String::new(),
            type_arguments: Vec::new(),
            array_dimensions: 0,
            classification: TypeClass::Unknown,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommentKind {
    Line,
    Block,
    Doc,
}

/// A comment associated with a declaration: the doc or block comment (or
/// contiguous run of line comments) ending on the line just above it, or a
/// trailing comment on the declaration line itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommentBlock {
    /// Comment text with delimiters (`//`, `/*`, `*/`) stripped.
    pub text: String,
    pub kind: CommentKind,
    pub line: u32,
}

/// Facts about a method body needed by the rules. All fields stay false/empty
/// for abstract or otherwise bodiless declarations.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BodyFacts {
    /// Body contains an if, switch, or ternary. Loops do not count.
    pub has_conditional: bool,
    pub has_throw: bool,
    /// Declaration carries a `throws` clause (Java only).
    pub declares_throws: bool,
    /// Body contains a return statement carrying an expression.
    pub returns_value: bool,
    pub referenced_names: BTreeSet<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Access {
    Public,
    Protected,
    Private,
    /// Java package-private / C# internal.
    Internal,
    Unknown,
}

/// What kind of data-holding entity a declaration introduces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DataKind {
    Attribute,
    Local,
    Parameter,
}

impl DataKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            DataKind::Attribute => "attribute",
            DataKind::Local => "variable",
            DataKind::Parameter => "parameter",
        }
    }
}

/// A field, local variable, or parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct DataEntity {
    pub kind: DataKind,
    pub name: SplitName,
    pub location: Location,
    pub data_type: TypeRef,
    pub comment: Option<CommentBlock>,
    pub enclosing_class: Option<String>,
    pub enclosing_method: Option<String>,
}

/// A method or constructor declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodEntity {
    pub name: SplitName,
    pub location: Location,
    /// Unknown classification for constructors.
    pub return_type: TypeRef,
    pub access: Access,
    pub parameters: Vec<DataEntity>,
    /// Simple names of annotations (Java) or attributes (C#).
    pub annotations: Vec<String>,
    pub comment: Option<CommentBlock>,
    pub body: BodyFacts,
    pub is_constructor: bool,
    pub is_test: bool,
    pub enclosing_class: Option<String>,
}

/// A class or struct with its declared attributes. Methods are held on the
/// unit and point back here via `enclosing_class`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassContext {
    pub name: String,
    pub attributes: Vec<DataEntity>,
    pub is_test_class: bool,
}

impl ClassContext {
    /// Attributes whose own term sequence appears, case-insensitively, as a
    /// contiguous subsequence of `terms`. `envVars` does not match
    /// `getEnvironmentVariables2` because [env, vars] is not a contiguous run
    /// of [get, environment, variables, 2].
    pub fn attributes_matching_term(&self, terms: &SplitName) -> Vec<&DataEntity> {
        let hay: Vec<&str> = terms.terms().iter().map(|t| t.lower.as_str()).collect();
        self.attributes
            .iter()
            .filter(|a| {
                let needle: Vec<&str> =
                    a.name.terms().iter().map(|t| t.lower.as_str()).collect();
                !needle.is_empty() && contains_contiguous(&hay, &needle)
            })
            .collect()
    }
}

fn contains_contiguous(hay: &[&str], needle: &[&str]) -> bool {
    hay.len() >= needle.len() && hay.windows(needle.len()).any(|w| w == needle)
}

/// One srcML unit: a single source file's extracted entities.
#[derive(Debug, Clone, PartialEq)]
pub struct SourceUnit {
    pub file_path: String,
    pub language: Language,
    pub classes: Vec<ClassContext>,
    pub methods: Vec<MethodEntity>,
    /// Local variables from method bodies plus any unit-level declarations.
    pub free_variables: Vec<DataEntity>,
}

impl SourceUnit {
    pub fn class(&self, name: &str) -> Option<&ClassContext> {
        self.classes.iter().find(|c| c.name == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::split::split_identifier;

    fn split(s: &str) -> SplitName {
        split_identifier(s).unwrap()
    }

    fn attr(name: &str) -> DataEntity {
        DataEntity {
            kind: DataKind::Attribute,
            name: split(name),
            location: Location { file: "T.java".into(), line: 1, column: 1 },
            data_type: TypeRef::unknown(),
            comment: None,
            enclosing_class: Some("T".into()),
            enclosing_method: None,
        }
    }

    fn ctx(attrs: &[&str]) -> ClassContext {
        ClassContext {
            name: "T".into(),
            attributes: attrs.iter().map(|a| attr(a)).collect(),
            is_test_class: false,
        }
    }

    #[test]
    fn matches_attribute_embedded_in_method_name() {
        let c = ctx(&["name"]);
        let hits = c.attributes_matching_term(&split("getName"));
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].name.raw(), "name");
    }

    #[test]
    fn requires_contiguous_term_run() {
        // envVars splits to [env, vars]; the method terms never contain that
        // run contiguously.
        let c = ctx(&["envVars"]);
        let hits = c.attributes_matching_term(&split("getEnvironmentVariables2"));
        assert!(hits.is_empty());
    }

    #[test]
    fn multi_term_attribute_matches_contiguously() {
        let c = ctx(&["userName"]);
        assert_eq!(c.attributes_matching_term(&split("getUserName")).len(), 1);
        assert!(c.attributes_matching_term(&split("getUserFullName")).is_empty());
    }

    #[test]
    fn matching_is_case_insensitive() {
        let c = ctx(&["Counter"]);
        assert_eq!(c.attributes_matching_term(&split("getCounter")).len(), 1);
    }
}
