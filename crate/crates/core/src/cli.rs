//! Command-line entry point.
//!
//! Exit codes: `0` success, `1` a domain or validation failure, `2` an input
//! that could not be read or parsed (including bad command-line usage).
//! Output is rendered completely before anything is written, so a failing
//! run never leaves partial output behind.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::data_io::{self, DataBundle, Format, Input};
use crate::difficulty::{CombinationPolicy, RubricMode};
use crate::error::{Error, Result};
use crate::mapper::{suggest_criterion, MatchOptions};
use crate::report::{self, OutputFormat, Render, ValidateOptions};
use crate::taxonomy::CriterionCatalog;
use crate::validation::Precision;

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "course-difficulty",
    version,
    about = "Estimate course difficulty from Bloom-level outcome mappings and validate it against grade history"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bloom/ABET difficulty index per course.
    Estimate(EstimateArgs),
    /// Difficulty index per course from historical class performance.
    Grades(GradesArgs),
    /// Compare grade-derived and Bloom-derived difficulty.
    Validate(ValidateArgs),
    /// Tag outcome statements with Bloom levels via the action-verb lexicon.
    MapOutcomes(MapArgs),
    /// Write the shipped data files to a directory.
    Fixtures {
        /// Target directory (created if missing).
        dir: PathBuf,
    },
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Table)]
    format: FormatArg,
    /// Write to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    /// Criterion catalog file, or a shipped fixture name.
    #[arg(long, default_value = "abet_catalog")]
    catalog: String,
    /// Curriculum file, or a shipped fixture name.
    #[arg(long)]
    curriculum: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
    mode: ModeArg,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct GradesArgs {
    /// Grade history file, or a shipped fixture name.
    #[arg(long)]
    grades: String,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    #[arg(long, default_value = "abet_catalog")]
    catalog: String,
    #[arg(long)]
    curriculum: String,
    #[arg(long)]
    grades: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Canonical)]
    mode: ModeArg,
    /// How the final course difficulty combines both estimates.
    #[arg(long, value_enum, default_value_t = PolicyArg::BloomPrimary)]
    policy: PolicyArg,
    /// A course counts as correctly estimated when |actual - estimated| is
    /// at most this.
    #[arg(long, default_value_t = 0.5)]
    tolerance: f64,
    /// Compare unrounded difficulty values instead of one-decimal ones.
    #[arg(long)]
    full_precision: bool,
    /// Fail when a curriculum course has no grade history.
    #[arg(long)]
    strict: bool,
    /// Also write the actual/estimated series as CSV.
    #[arg(long)]
    plot: Option<PathBuf>,
    /// Also write an SVG chart of the two series.
    #[arg(long)]
    chart: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Args)]
struct MapArgs {
    /// Outcome statements file (`criterion_id,text`).
    #[arg(long)]
    statements: String,
    /// Verb lexicon file, or a shipped fixture name.
    #[arg(long, default_value = "bloom_lexicon")]
    lexicon: String,
    /// Also match plural and gerund forms (`designs`, `designing`).
    #[arg(long)]
    suffix_rule: bool,
    /// Accept the drafts: write a catalog of every statement that mapped to
    /// at least one level.
    #[arg(long)]
    accept: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Canonical,
    AsPrinted,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    BloomPrimary,
    MeanOfBoth,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
            FormatArg::Table => OutputFormat::Table,
        }
    }
}

impl From<ModeArg> for RubricMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Canonical => RubricMode::Canonical,
            ModeArg::AsPrinted => RubricMode::AsPrinted,
        }
    }
}

impl From<PolicyArg> for CombinationPolicy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::BloomPrimary => CombinationPolicy::BloomPrimary,
            PolicyArg::MeanOfBoth => CombinationPolicy::MeanOfBoth,
        }
    }
}

/// What a successful command produced.
struct Outcome {
    primary: String,
    /// Extra files to write alongside the primary output.
    files: Vec<(PathBuf, String)>,
    warnings: Vec<String>,
}

impl Outcome {
    fn new(primary: String) -> Self {
        Outcome {
            primary,
            files: Vec::new(),
            warnings: Vec::new(),
        }
    }
}

/// Runs the CLI with `args` (including the program name), writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let text = err.render().to_string();
            return if err.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };

    let (result, output) = match cli.command {
        Command::Estimate(args) => (cmd_estimate(&args), args.out.output),
        Command::Grades(args) => (cmd_grades(&args), args.out.output),
        Command::Validate(args) => (cmd_validate(&args), args.out.output),
        Command::MapOutcomes(args) => (cmd_map_outcomes(&args), args.out.output),
        Command::Fixtures { dir } => (cmd_fixtures(&dir), None),
    };

    let outcome = result.and_then(|outcome| {
        for (path, text) in &outcome.files {
            write_file(path, text)?;
        }
        if let Some(path) = &output {
            write_file(path, &outcome.primary)?;
        }
        Ok(outcome)
    });

    match outcome {
        Ok(outcome) => {
            for warning in &outcome.warnings {
                let _ = writeln!(stderr, "warning: {warning}");
            }
            if output.is_none() {
                if let Err(e) = stdout.write_all(outcome.primary.as_bytes()) {
                    let _ = writeln!(stderr, "error: writing standard output: {e}");
                    return EXIT_INPUT;
                }
            }
            EXIT_OK
        }
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            if err.is_input_failure() {
                EXIT_INPUT
            } else {
                EXIT_DOMAIN
            }
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn cmd_estimate(args: &EstimateArgs) -> Result<Outcome> {
    let catalog = data_io::parse_catalog(&Input::resolve(&args.catalog)?)?;
    let courses = data_io::parse_curriculum(&Input::resolve(&args.curriculum)?, &catalog)?;
    let report = report::estimate(&catalog, &courses, args.mode.into())?;
    Ok(Outcome::new(report.render(args.out.format.into())))
}

fn cmd_grades(args: &GradesArgs) -> Result<Outcome> {
    let grades = data_io::parse_grades(&Input::resolve(&args.grades)?)?;
    let report = report::grade_table(&grades)?;
    Ok(Outcome::new(report.render(args.out.format.into())))
}

fn cmd_validate(args: &ValidateArgs) -> Result<Outcome> {
    let bundle = DataBundle::load(
        &Input::resolve(&args.catalog)?,
        &Input::resolve(&args.curriculum)?,
        Some(&Input::resolve(&args.grades)?),
    )?;
    let missing = bundle.courses_without_grades();
    if args.strict && !missing.is_empty() {
        return Err(Error::InsufficientData(format!(
            "courses without grade history: {}",
            missing.join(", ")
        )));
    }
    let options = ValidateOptions {
        mode: args.mode.into(),
        policy: args.policy.into(),
        precision: if args.full_precision {
            Precision::Full
        } else {
            Precision::Rounded
        },
        tolerance: args.tolerance,
    };
    let validation = report::validate(&bundle, options)?;
    let mut outcome = Outcome::new(validation.render(args.out.format.into()));
    if !validation.excluded.is_empty() {
        outcome.warnings.push(format!(
            "courses without grade history excluded from means: {}",
            validation.excluded.join(", ")
        ));
    }
    if !validation.unmatched_grades.is_empty() {
        outcome.warnings.push(format!(
            "grade histories for courses not in the curriculum: {}",
            validation.unmatched_grades.join(", ")
        ));
    }
    if let Some(path) = &args.plot {
        outcome.files.push((path.clone(), validation.plot_csv()));
    }
    if let Some(path) = &args.chart {
        outcome.files.push((path.clone(), validation.chart_svg()));
    }
    Ok(outcome)
}

fn cmd_map_outcomes(args: &MapArgs) -> Result<Outcome> {
    let lexicon = data_io::parse_lexicon(&Input::resolve(&args.lexicon)?)?;
    let statements = data_io::parse_statements(&Input::resolve(&args.statements)?)?;
    let options = MatchOptions {
        suffix_rule: args.suffix_rule,
    };
    let report = report::map_outcomes(&statements, &lexicon, options);
    let mut outcome = Outcome::new(report.render(args.out.format.into()));
    let review: Vec<&str> = report
        .results
        .iter()
        .filter(|r| r.needs_review)
        .map(|r| r.result.criterion_id.as_str())
        .collect();
    if !review.is_empty() {
        outcome.warnings.push(format!(
            "no action words found, classify manually: {}",
            review.join(", ")
        ));
    }
    if let Some(path) = &args.accept {
        let drafts = statements
            .iter()
            .filter_map(|s| match suggest_criterion(s, &lexicon, options) {
                Err(Error::NoActionWords { .. }) => None,
                other => Some(other),
            })
            .collect::<Result<Vec<_>>>()?;
        let catalog = CriterionCatalog::new(drafts, "map-outcomes draft")?;
        outcome.files.push((
            path.clone(),
            data_io::write_catalog(&catalog, Format::from_path(path)),
        ));
    }
    Ok(outcome)
}

fn cmd_fixtures(dir: &Path) -> Result<Outcome> {
    let written = data_io::fixtures::write_all(dir)?;
    let listing: String = written
        .iter()
        .map(|p| format!("{}\n", p.display()))
        .collect();
    Ok(Outcome::new(listing))
}
