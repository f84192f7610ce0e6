//! Command-line interface: argument parsing, dispatch, and exit codes.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::config::{load_config, ProjectConfig};
use crate::eval;
use crate::model::Language;
use crate::pipeline::{analyze_paths, AnalysisOptions, PipelineError};
use crate::report::{self, Format};

/// Nothing to report (or nothing requested to fail on).
pub const EXIT_OK: u8 = 0;
/// Violations found and `--fail-on-violation` was set.
pub const EXIT_VIOLATIONS: u8 = 1;
/// Bad invocation or bad configuration.
pub const EXIT_USAGE: u8 = 2;
/// Unreadable or malformed input (or unwritable output).
pub const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(
    name = "namelint",
    version,
    about = "Finds identifier names that lie about behavior or types in Java and C# \
             sources, ingested as srcML archives"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze srcML inputs and report naming violations
    Analyze(AnalyzeArgs),
    /// Score a report against hand-validated ground truth
    Evaluate(EvaluateArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// srcML files, or directories to scan recursively for .xml files
    #[arg(required = true)]
    inputs: Vec<PathBuf>,

    /// Project configuration file (TOML)
    #[arg(long, short = 'c')]
    config: Option<PathBuf>,

    /// Report format: text, json, or csv
    #[arg(long, default_value = "text")]
    format: String,

    /// Write the report to this file instead of stdout
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,

    /// Only run these rules (ids or group globs like B.*); comma-separated or
    /// repeated
    #[arg(long, value_delimiter = ',')]
    rules: Vec<String>,

    /// Treat every unit as this language (java or csharp), ignoring unit
    /// attributes
    #[arg(long)]
    language: Option<String>,

    /// Worker threads for rule evaluation (default: all cores)
    #[arg(long, short = 'j')]
    jobs: Option<usize>,

    /// Omit timing so identical inputs yield byte-identical reports
    #[arg(long)]
    deterministic: bool,

    /// Exit with status 1 when any violation is reported
    #[arg(long)]
    fail_on_violation: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    /// Report produced by analyze (.json or .csv)
    #[arg(long)]
    report: PathBuf,

    /// Ground-truth CSV with columns file,line,rule_id,label
    #[arg(long)]
    truth: PathBuf,

    /// Write the evaluation to this file instead of stdout
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

/// Parses arguments and runs the requested command, returning the process
/// exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    match cli.command {
        Command::Analyze(args) => analyze(args),
        Command::Evaluate(args) => evaluate(args),
    }
}

fn usage_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_USAGE
}

fn input_error(message: impl std::fmt::Display) -> u8 {
    eprintln!("error: {message}");
    EXIT_INPUT
}

fn parse_language(text: &str) -> Result<Language, String> {
    match text.to_ascii_lowercase().as_str() {
        "java" => Ok(Language::Java),
        "csharp" | "c#" | "cs" => Ok(Language::CSharp),
        other => Err(format!("unknown language '{other}' (expected java or csharp)")),
    }
}

fn analyze(args: AnalyzeArgs) -> u8 {
    let format: Format = match args.format.parse() {
        Ok(f) => f,
        Err(e) => return usage_error(e),
    };
    let language_override = match args.language.as_deref().map(parse_language).transpose() {
        Ok(l) => l,
        Err(e) => return usage_error(e),
    };
    let config = match &args.config {
        Some(path) => match load_config(path) {
            Ok(c) => c,
            Err(e) => return usage_error(e),
        },
        None => ProjectConfig::default(),
    };

    let opts = AnalysisOptions {
        config,
        rules_filter: args.rules,
        language_override,
        jobs: args.jobs,
        deterministic: args.deterministic,
    };
    let outcome = match analyze_paths(&args.inputs, &opts) {
        Ok(o) => o,
        Err(e @ PipelineError::Input(_)) => return input_error(e),
        Err(e) => return usage_error(e),
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }

    let rendered = report::render(&outcome.report, format);
    if let Some(path) = &args.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            return input_error(format!("{}: {e}", path.display()));
        }
    } else {
        print!("{rendered}");
    }

    if args.fail_on_violation && !outcome.report.violations.is_empty() {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    }
}

fn evaluate(args: EvaluateArgs) -> u8 {
    let report_text = match std::fs::read_to_string(&args.report) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", args.report.display())),
    };
    let looks_json = match args.report.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => true,
        Some(ext) if ext.eq_ignore_ascii_case("csv") => false,
        _ => report_text.trim_start().starts_with('{'),
    };
    let violations = if looks_json {
        match report::parse_report_json(&report_text) {
            Ok(r) => r.violations,
            Err(e) => return input_error(format!("{}: {e}", args.report.display())),
        }
    } else {
        match report::parse_violations_csv(&report_text) {
            Ok(v) => v,
            Err(e) => return input_error(format!("{}: {e}", args.report.display())),
        }
    };

    let truth_text = match std::fs::read_to_string(&args.truth) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", args.truth.display())),
    };
    let truth = match eval::load_truth(&truth_text) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", args.truth.display())),
    };

    let rendered = eval::evaluate(&violations, &truth).render();
    if let Some(path) = &args.output {
        if let Err(e) = std::fs::write(path, &rendered) {
            return input_error(format!("{}: {e}", path.display()));
        }
    } else {
        print!("{rendered}");
    }
    EXIT_OK
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn language_names_parse_case_insensitively() {
        assert_eq!(parse_language("Java").unwrap(), Language::Java);
        assert_eq!(parse_language("JAVA").unwrap(), Language::Java);
        assert_eq!(parse_language("csharp").unwrap(), Language::CSharp);
        assert_eq!(parse_language("C#").unwrap(), Language::CSharp);
        assert!(parse_language("python").is_err());
    }

    #[test]
    fn help_and_version_exit_cleanly() {
        assert_eq!(run(["namelint", "--help"]), EXIT_OK);
        assert_eq!(run(["namelint", "--version"]), EXIT_OK);
        assert_eq!(run(["namelint", "analyze", "--help"]), EXIT_OK);
    }

    #[test]
    fn bad_invocations_exit_with_usage_code() {
        // Missing required inputs, unknown subcommand, unknown flag.
        assert_eq!(run(["namelint", "analyze"]), EXIT_USAGE);
        assert_eq!(run(["namelint", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["namelint", "analyze", "--bogus", "x.xml"]), EXIT_USAGE);
        assert_eq!(run(["namelint"]), EXIT_USAGE);
    }

    #[test]
    fn bad_option_values_exit_with_usage_code() {
        assert_eq!(
            run(["namelint", "analyze", "--format", "yaml", "x.xml"]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["namelint", "analyze", "--language", "python", "x.xml"]),
            EXIT_USAGE
        );
        assert_eq!(
            run(["namelint", "analyze", "--rules", "Z.9", "x.xml"]),
            EXIT_USAGE
        );
    }

    #[test]
    fn missing_input_exits_with_input_code() {
        assert_eq!(
            run(["namelint", "analyze", "--deterministic", "/nonexistent/a.xml"]),
            EXIT_INPUT
        );
        assert_eq!(
            run([
                "namelint",
                "evaluate",
                "--report",
                "/nonexistent/r.json",
                "--truth",
                "/nonexistent/t.csv"
            ]),
            EXIT_INPUT
        );
    }
}
