//! Name splitting, term categories, plural rules, antonyms, and type tables.

pub mod antonym;
pub mod inflect;
pub mod split;
pub mod terms;
pub mod testness;
pub mod typeclass;

pub use antonym::{tokenize_words, AntonymLexicon};
pub use split::{split_identifier, SplitName, Term, TermKind};
pub use terms::{TermCategory, TermLexicon, TermPosition};
pub use testness::TestConfig;
pub use typeclass::TypeLexicon;

use crate::model::Language;

/// Everything the extractor and the rules need to interpret names and types
/// for one language, assembled from defaults plus project config.
#[derive(Debug, Clone)]
pub struct Lexicons {
    pub terms: TermLexicon,
    pub antonyms: AntonymLexicon,
    pub types: TypeLexicon,
    pub test: TestConfig,
}

impl Lexicons {
    pub fn with_defaults(language: Language) -> Lexicons {
        Lexicons {
            terms: TermLexicon::default(),
            antonyms: AntonymLexicon::default(),
            types: TypeLexicon::for_language(language),
            test: TestConfig::new(language),
        }
    }
}
