//! End-to-end analysis: input paths → archives → units → violations → report.

use std::path::{Path, PathBuf};
use std::time::Instant;

use thiserror::Error;

use crate::config::{self, ConfigError, ProjectConfig};
use crate::ingest::{self, extract, IngestError};
use crate::model::{Language, SourceUnit};
use crate::report::{AnalysisReport, InputsManifest, SkippedInput};
use crate::rules::{self, BadRulePattern};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Rules(#[from] BadRulePattern),
    #[error("--jobs: {0}")]
    Jobs(String),
    #[error(transparent)]
    Input(#[from] IngestError),
}

/// Options for one analysis run, on top of the project config.
#[derive(Debug, Clone, Default)]
pub struct AnalysisOptions {
    pub config: ProjectConfig,
    /// CLI rule patterns; when non-empty the configured set is narrowed to
    /// their intersection.
    pub rules_filter: Vec<String>,
    /// Analyze every unit as this language, ignoring `language` attributes.
    pub language_override: Option<Language>,
    /// Worker threads for rule evaluation; None uses the global default.
    pub jobs: Option<usize>,
    /// Omit wall-clock timing so equal inputs give byte-identical reports.
    pub deterministic: bool,
}

/// A finished run: the report plus non-fatal notes for stderr.
#[derive(Debug)]
pub struct AnalysisOutcome {
    pub report: AnalysisReport,
    pub warnings: Vec<String>,
}

/// Expands files and directories into a sorted, deduplicated list of inputs.
/// Directories are walked recursively for `.xml` files; explicitly named
/// files are taken as they are.
pub fn collect_input_files(paths: &[PathBuf]) -> Result<Vec<PathBuf>, IngestError> {
    fn walk(dir: &Path, out: &mut Vec<PathBuf>) -> std::io::Result<()> {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_dir() {
                walk(&path, out)?;
            } else if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("xml")) {
                out.push(path);
            }
        }
        Ok(())
    }

    let mut files = Vec::new();
    for path in paths {
        let io_err = |source| IngestError::Io { path: path.display().to_string(), source };
        if path.is_dir() {
            walk(path, &mut files).map_err(io_err)?;
        } else if path.is_file() {
            files.push(path.clone());
        } else {
            return Err(io_err(std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "no such file or directory",
            )));
        }
    }
    files.sort_by(|a, b| a.display().to_string().cmp(&b.display().to_string()));
    files.dedup();
    Ok(files)
}

/// Runs the full analysis over the given files and directories.
pub fn analyze_paths(
    paths: &[PathBuf],
    opts: &AnalysisOptions,
) -> Result<AnalysisOutcome, PipelineError> {
    let start = Instant::now();
    let mut resolved = config::resolve(&opts.config)?;
    if !opts.rules_filter.is_empty() {
        resolved.rules = resolved.rules.restrict(&opts.rules_filter)?;
    }
    let mut warnings = std::mem::take(&mut resolved.warnings);

    let files = collect_input_files(paths)?;
    let mut units: Vec<SourceUnit> = Vec::new();
    let mut analyzed: Vec<String> = Vec::new();
    let mut skipped: Vec<SkippedInput> = Vec::new();

    for file in &files {
        let archive = ingest::load_archive(file)?;
        for (i, raw) in archive.units.iter().enumerate() {
            let unit_name = raw
                .filename
                .clone()
                .unwrap_or_else(|| format!("{}[{}]", archive.path, i));
            let language = match opts.language_override {
                Some(l) => l,
                None => match &raw.language {
                    None => {
                        skipped.push(SkippedInput {
                            path: unit_name,
                            reason: "unit has no language attribute".to_string(),
                        });
                        continue;
                    }
                    Some(attr) => match Language::from_srcml(attr) {
                        Some(l) => l,
                        None => {
                            skipped.push(SkippedInput {
                                path: unit_name,
                                reason: format!("language '{attr}' is not analyzed"),
                            });
                            continue;
                        }
                    },
                },
            };
            let extraction =
                extract::extract_unit(&raw.xml, &unit_name, language, resolved.lexicons(language))
                    .map_err(|message| IngestError::Format {
                        path: archive.path.clone(),
                        message,
                    })?;
            warnings.extend(extraction.warnings);
            analyzed.push(unit_name);
            units.push(extraction.unit);
        }
    }

    let violations = match opts.jobs {
        Some(jobs) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| PipelineError::Jobs(e.to_string()))?;
            pool.install(|| rules::run_rules(&units, &resolved))
        }
        None => rules::run_rules(&units, &resolved),
    };

    let elapsed_ms =
        if opts.deterministic { None } else { Some(start.elapsed().as_millis() as u64) };
    let report =
        AnalysisReport::new(InputsManifest { analyzed, skipped }, violations, elapsed_ms);
    Ok(AnalysisOutcome { report, warnings })
}
