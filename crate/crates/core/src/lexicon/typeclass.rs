//! Declared-type classification.

use std::collections::BTreeSet;

use crate::model::{Language, TypeClass};

/// Java collection base names. Lookups are case-sensitive.
const JAVA_COLLECTIONS: &[&str] = &[
    "List", "ArrayList", "LinkedList", "Set", "HashSet", "TreeSet", "Map", "HashMap", "TreeMap",
    "Collection", "Iterable", "Iterator", "Queue", "Deque", "Vector", "Stack",
];

/// C# collection base names. Lookups are case-sensitive (class names).
const CSHARP_COLLECTIONS: &[&str] = &[
    "IEnumerable", "ICollection", "IList", "List", "Dictionary", "IDictionary", "HashSet",
    "ISet", "Queue", "Stack", "Array",
];

/// Per-language type name tables. Language keywords (`void`, `bool`, `var`)
/// are matched case-insensitively for C# and exactly for Java; class names
/// are matched exactly for both.
#[derive(Debug, Clone)]
pub struct TypeLexicon {
    language: Language,
    void_names: BTreeSet<String>,
    boolean_names: BTreeSet<String>,
    collection_names: BTreeSet<String>,
    /// Keywords that carry no resolvable type name (`var`, `dynamic`).
    unknown_markers: BTreeSet<String>,
}

impl TypeLexicon {
    pub fn for_language(language: Language) -> TypeLexicon {
        let set = |items: &[&str]| items.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
        match language {
            Language::Java => TypeLexicon {
                language,
                void_names: set(&["void", "Void"]),
                boolean_names: set(&["boolean", "Boolean"]),
                collection_names: set(JAVA_COLLECTIONS),
                unknown_markers: set(&["var"]),
            },
            Language::CSharp => TypeLexicon {
                language,
                void_names: set(&["void"]),
                boolean_names: set(&["bool", "Boolean"]),
                collection_names: set(CSHARP_COLLECTIONS),
                unknown_markers: set(&["var", "dynamic"]),
            },
        }
    }

    /// Registers an additional collection base name from config.
    pub fn add_collection(&mut self, name: &str) {
        self.collection_names.insert(name.to_string());
    }

    fn keyword_hit(&self, set: &BTreeSet<String>, name: &str) -> bool {
        match self.language {
            Language::Java => set.contains(name),
            Language::CSharp => set.iter().any(|k| k.eq_ignore_ascii_case(name)),
        }
    }

    /// Classification of a type by base name and array dimensions.
    ///
    /// Order matters: void and boolean names first, then arrays and known
    /// collection names, then unknown markers. Every other named type is a
    /// scalar; `unknown` is reserved for declarations carrying no resolvable
    /// name, so rules that assert what a type is NOT stay silent only on
    /// genuinely nameless declarations.
    pub fn classify(&self, base_name: &str, array_dimensions: u8) -> TypeClass {
        if array_dimensions > 0 {
            return TypeClass::Collection;
        }
        if base_name.is_empty() {
            return TypeClass::Unknown;
        }
        if self.keyword_hit(&self.void_names, base_name) {
            return TypeClass::Void;
        }
        if self.keyword_hit(&self.boolean_names, base_name) {
            return TypeClass::Boolean;
        }
        if self.collection_names.contains(base_name) {
            return TypeClass::Collection;
        }
        if self.keyword_hit(&self.unknown_markers, base_name) {
            return TypeClass::Unknown;
        }
        TypeClass::Scalar
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn java_builtins_classify() {
        let lex = TypeLexicon::for_language(Language::Java);
        assert_eq!(lex.classify("void", 0), TypeClass::Void);
        assert_eq!(lex.classify("boolean", 0), TypeClass::Boolean);
        assert_eq!(lex.classify("Boolean", 0), TypeClass::Boolean);
        assert_eq!(lex.classify("List", 0), TypeClass::Collection);
        assert_eq!(lex.classify("int", 0), TypeClass::Scalar);
        assert_eq!(lex.classify("String", 0), TypeClass::Scalar);
    }

    #[test]
    fn java_keyword_lookups_are_case_sensitive() {
        let lex = TypeLexicon::for_language(Language::Java);
        assert_eq!(lex.classify("BOOLEAN", 0), TypeClass::Scalar);
        assert_eq!(lex.classify("list", 0), TypeClass::Scalar);
    }

    #[test]
    fn csharp_keywords_are_case_insensitive() {
        let lex = TypeLexicon::for_language(Language::CSharp);
        assert_eq!(lex.classify("bool", 0), TypeClass::Boolean);
        assert_eq!(lex.classify("Bool", 0), TypeClass::Boolean);
        assert_eq!(lex.classify("VOID", 0), TypeClass::Void);
        assert_eq!(lex.classify("IEnumerable", 0), TypeClass::Collection);
        // Collection class names stay case-sensitive.
        assert_eq!(lex.classify("ienumerable", 0), TypeClass::Scalar);
    }

    #[test]
    fn arrays_are_collections() {
        let lex = TypeLexicon::for_language(Language::Java);
        assert_eq!(lex.classify("String", 1), TypeClass::Collection);
        assert_eq!(lex.classify("int", 2), TypeClass::Collection);
    }

    #[test]
    fn named_user_types_are_scalars() {
        let lex = TypeLexicon::for_language(Language::Java);
        assert_eq!(lex.classify("EnvVars", 0), TypeClass::Scalar);
        let cs = TypeLexicon::for_language(Language::CSharp);
        assert_eq!(cs.classify("CompletionResult", 0), TypeClass::Scalar);
    }

    #[test]
    fn nameless_declarations_are_unknown() {
        let java = TypeLexicon::for_language(Language::Java);
        assert_eq!(java.classify("var", 0), TypeClass::Unknown);
        assert_eq!(java.classify("", 0), TypeClass::Unknown);
        let cs = TypeLexicon::for_language(Language::CSharp);
        assert_eq!(cs.classify("var", 0), TypeClass::Unknown);
        assert_eq!(cs.classify("dynamic", 0), TypeClass::Unknown);
    }

    #[test]
    fn config_collections_extend_the_table() {
        let mut lex = TypeLexicon::for_language(Language::Java);
        assert_eq!(lex.classify("EnvVars", 0), TypeClass::Scalar);
        lex.add_collection("EnvVars");
        assert_eq!(lex.classify("EnvVars", 0), TypeClass::Collection);
    }
}
