//! Identifier-name linting for Java and C# sources ingested as srcML.
//!
//! The library splits identifiers into terms, classifies declared types, and
//! evaluates a fixed catalogue of 19 naming rules (A.1 through G.2) over the
//! entities extracted from srcML units. A small evaluation harness scores rule
//! precision against hand-validated ground truth.

pub mod cli;
pub mod config;
pub mod eval;
pub mod ingest;
pub mod lexicon;
pub mod model;
pub mod pipeline;
pub mod report;
pub mod rules;

pub use config::ProjectConfig;
pub use model::{Language, SourceUnit};
pub use report::AnalysisReport;
pub use rules::{RuleId, Violation};
