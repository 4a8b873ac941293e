//! Pipeline steps and their reports.
//!
//! Each report renders to CSV, JSON or an aligned text table. Rendering is
//! byte-stable: fixed column order, one-decimal formatting for reported
//! difficulty values, `\n` line endings. JSON objects list keys in struct
//! declaration order, maps are sorted by key.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::data_io::{
    csv_writer, finish_csv, to_json, write_row, DataBundle, GradeBook, SourceInfo,
};
use crate::difficulty::{
    bloom_difficulty, final_difficulty, grade_difficulty, BloomDifficulty, CombinationPolicy,
    Course, FinalDifficulty, GradeHistory, RubricMode,
};
use crate::error::{Error, Result};
use crate::mapper::{map_outcome, MappingResult, MatchOptions, OutcomeStatement};
use crate::rounding::{fmt1, fmt_trim, round1};
use crate::taxonomy::{catalog_total, criterion_rubric, BloomLexicon, CriterionCatalog};
use crate::validation::{compare, summarize, Precision, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    Csv,
    Json,
    #[default]
    Table,
}

pub trait Render {
    fn render(&self, format: OutputFormat) -> String;
}

/// Renders `report` and writes it to `path`. Nothing is written if the
/// path cannot be created.
pub fn write_report(report: &impl Render, format: OutputFormat, path: &Path) -> Result<()> {
    std::fs::write(path, report.render(format)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

// ---------------------------------------------------------------------------
// estimate

#[derive(Debug, Clone, Serialize)]
pub struct EstimateRow {
    pub course_code: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub title: Option<String>,
    /// Points per mapped criterion after applying the rubric mode.
    pub cells: BTreeMap<String, u32>,
    pub overridden: bool,
    #[serde(flatten)]
    pub difficulty: BloomDifficulty,
    pub di_reported: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EstimateReport {
    pub mode: RubricMode,
    pub catalog: String,
    /// Rubric per catalog criterion, in id order.
    pub rubrics: Vec<(String, u32)>,
    pub catalog_total: u32,
    pub courses: Vec<EstimateRow>,
}

pub fn estimate(
    catalog: &CriterionCatalog,
    courses: &[Course],
    mode: RubricMode,
) -> Result<EstimateReport> {
    let rubrics = catalog
        .iter()
        .map(|c| Ok((c.id.to_string(), criterion_rubric(c)?)))
        .collect::<Result<Vec<_>>>()?;
    let rows = courses
        .iter()
        .map(|course| {
            let seen = mode.apply(course);
            let difficulty = bloom_difficulty(&seen, catalog)?;
            Ok(EstimateRow {
                course_code: course.code.clone(),
                title: course.title.clone(),
                cells: seen
                    .cells(catalog)?
                    .into_iter()
                    .map(|(id, p)| (id.to_string(), p))
                    .collect(),
                overridden: seen.has_overrides(),
                di_reported: difficulty.reported_di(),
                difficulty,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(EstimateReport {
        mode,
        catalog: catalog.provenance.clone(),
        rubrics,
        catalog_total: catalog_total(catalog)?,
        courses: rows,
    })
}

impl EstimateReport {
    fn grid(&self) -> Vec<Vec<String>> {
        let mut header = vec!["course_code".to_string()];
        header.extend(self.rubrics.iter().map(|(id, _)| id.clone()));
        header.extend(
            [
                "raw_total",
                "criteria_count",
                "max_total",
                "difficulty_index",
                "source",
            ]
            .map(String::from),
        );
        let mut rubric_row = vec!["RUBRIC".to_string()];
        rubric_row.extend(self.rubrics.iter().map(|(_, p)| p.to_string()));
        rubric_row.push(self.catalog_total.to_string());
        rubric_row.extend(["", "", ""].map(String::from));
        rubric_row.push(format!("mode:{}", self.mode));
        let mut grid = vec![header, rubric_row];
        for row in &self.courses {
            let mut line = vec![row.course_code.clone()];
            line.extend(
                self.rubrics
                    .iter()
                    .map(|(id, _)| row.cells.get(id).map(u32::to_string).unwrap_or_default()),
            );
            let d = &row.difficulty;
            line.extend([
                d.raw_total.to_string(),
                d.criteria_count.to_string(),
                d.max_total.to_string(),
                fmt1(d.di),
                if row.overridden {
                    "override"
                } else {
                    "catalog"
                }
                .to_string(),
            ]);
            grid.push(line);
        }
        grid
    }
}

impl Render for EstimateReport {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => grid_csv(&self.grid()),
            OutputFormat::Json => to_json(self),
            OutputFormat::Table => {
                let mut out = format!(
                    "Bloom/ABET difficulty estimate (mode: {}, catalog: {})\n",
                    self.mode, self.catalog
                );
                out.push_str(&grid_table(&self.grid()));
                out
            }
        }
    }
}

// ---------------------------------------------------------------------------
// grades

#[derive(Debug, Clone, Serialize)]
pub struct GenerationDi {
    pub label: String,
    pub kind: crate::difficulty::GradeKind,
    pub value: f64,
    pub di: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradeRow {
    pub course_code: String,
    pub generations: Vec<GenerationDi>,
    pub mean_di: f64,
    pub actual_di: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradesReport {
    pub courses: Vec<GradeRow>,
}

fn grade_row(history: &GradeHistory) -> Result<GradeRow> {
    let mean_di = grade_difficulty(history)?;
    let generations = history
        .generations
        .iter()
        .map(|g| {
            Ok(GenerationDi {
                label: g.label.clone(),
                kind: g.kind,
                value: g.value,
                di: g.to_di()?,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GradeRow {
        course_code: history.course_code.clone(),
        generations,
        mean_di,
        actual_di: round1(mean_di),
    })
}

pub fn grade_table(grades: &GradeBook) -> Result<GradesReport> {
    Ok(GradesReport {
        courses: grades.values().map(grade_row).collect::<Result<_>>()?,
    })
}

impl GradesReport {
    fn grid(&self) -> Vec<Vec<String>> {
        let width = self
            .courses
            .iter()
            .map(|r| r.generations.len())
            .max()
            .unwrap_or(0);
        let mut header = vec!["course_code".to_string()];
        header.extend((1..=width).map(|i| format!("generation_{i}")));
        header.extend(["generations", "mean_di", "actual_di"].map(String::from));
        let mut grid = vec![header];
        for row in &self.courses {
            let mut line = vec![row.course_code.clone()];
            line.extend((0..width).map(|i| {
                row.generations
                    .get(i)
                    .map(|g| fmt_trim(g.di))
                    .unwrap_or_default()
            }));
            line.extend([
                row.generations.len().to_string(),
                fmt_trim(row.mean_di),
                fmt1(row.mean_di),
            ]);
            grid.push(line);
        }
        grid
    }
}

impl Render for GradesReport {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => grid_csv(&self.grid()),
            OutputFormat::Json => to_json(self),
            OutputFormat::Table => {
                let mut out = String::from("Grade-history difficulty (0-5 scale)\n");
                out.push_str(&grid_table(&self.grid()));
                out
            }
        }
    }
}

// ---------------------------------------------------------------------------
// validate

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidateOptions {
    pub mode: RubricMode,
    pub policy: CombinationPolicy,
    pub precision: Precision,
    pub tolerance: f64,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions {
            mode: RubricMode::default(),
            policy: CombinationPolicy::default(),
            precision: Precision::default(),
            tolerance: 0.5,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportedMeans {
    pub mean_actual: f64,
    pub mean_estimated: f64,
    pub mean_abs_error: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationOutput {
    pub mode: RubricMode,
    pub policy: CombinationPolicy,
    pub precision: Precision,
    pub report: ValidationReport,
    pub reported: ReportedMeans,
    pub correct: usize,
    pub final_difficulty: Vec<FinalDifficulty>,
    /// Curriculum courses without grade history; left out of every mean.
    pub excluded: Vec<String>,
    /// Grade histories for courses not in the curriculum.
    pub unmatched_grades: Vec<String>,
    pub sources: Vec<SourceInfo>,
}

/// Compares grade-derived (actual) against Bloom-derived (estimated)
/// difficulty for every course that has both.
pub fn validate(bundle: &DataBundle, options: ValidateOptions) -> Result<ValidationOutput> {
    let mut comparisons = Vec::new();
    let mut finals = Vec::new();
    for course in &bundle.courses {
        let Some(history) = bundle.history(&course.code) else {
            continue;
        };
        let bloom = bloom_difficulty(&options.mode.apply(course), &bundle.catalog)?;
        let grade = grade_difficulty(history)?;
        comparisons.push(compare(&course.code, grade, bloom.di, options.precision));
        finals.push(final_difficulty(
            &course.code,
            bloom.di,
            grade,
            options.policy,
        ));
    }
    let report = summarize(comparisons, options.tolerance)?;
    Ok(ValidationOutput {
        mode: options.mode,
        policy: options.policy,
        precision: options.precision,
        reported: ReportedMeans {
            mean_actual: round1(report.mean_actual),
            mean_estimated: round1(report.mean_estimated),
            mean_abs_error: round1(report.mean_abs_error),
        },
        correct: report.correct_count(),
        report,
        final_difficulty: finals,
        excluded: bundle
            .courses_without_grades()
            .into_iter()
            .map(String::from)
            .collect(),
        unmatched_grades: bundle
            .unmatched_grade_codes()
            .into_iter()
            .map(String::from)
            .collect(),
        sources: bundle.provenance.clone(),
    })
}

impl ValidationOutput {
    /// Actual and estimated series per course, for charting.
    pub fn plot_csv(&self) -> String {
        let mut grid = vec![["course_code", "actual_di", "estimated_di"]
            .map(String::from)
            .to_vec()];
        for c in &self.report.comparisons {
            grid.push(vec![
                c.course_code.clone(),
                fmt1(c.actual_di),
                fmt1(c.estimated_di),
            ]);
        }
        grid_csv(&grid)
    }

    /// A two-series line chart of actual vs estimated difficulty.
    pub fn chart_svg(&self) -> String {
        const W: f64 = 640.0;
        const H: f64 = 360.0;
        const PAD: f64 = 40.0;
        let n = self.report.comparisons.len();
        let x = |i: usize| {
            if n <= 1 {
                W / 2.0
            } else {
                PAD + (W - 2.0 * PAD) * i as f64 / (n - 1) as f64
            }
        };
        let y = |di: f64| H - PAD - (H - 2.0 * PAD) * di / 5.0;
        let series = |pick: fn(&crate::validation::CourseComparison) -> f64| {
            self.report
                .comparisons
                .iter()
                .enumerate()
                .map(|(i, c)| format!("{:.1},{:.1}", x(i), y(pick(c))))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let mut svg = format!(
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
        );
        let _ = writeln!(svg, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
        for tick in 0..=5 {
            let ty = y(f64::from(tick));
            let _ = writeln!(
                svg,
                "<line x1=\"{PAD}\" y1=\"{ty:.1}\" x2=\"{:.1}\" y2=\"{ty:.1}\" stroke=\"#ddd\"/><text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\">{tick}</text>",
                W - PAD,
                PAD - 20.0,
                ty + 4.0
            );
        }
        for (i, c) in self.report.comparisons.iter().enumerate() {
            let _ = writeln!(
                svg,
                "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
                x(i),
                H - PAD + 16.0,
                xml_escape(&c.course_code)
            );
        }
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"{}\"/>",
            series(|c| c.actual_di)
        );
        let _ = writeln!(
            svg,
            "<polyline fill=\"none\" stroke=\"#ff7f0e\" stroke-width=\"2\" points=\"{}\"/>",
            series(|c| c.estimated_di)
        );
        let _ = writeln!(
            svg,
            "<text x=\"{PAD}\" y=\"16\" font-size=\"12\" fill=\"#1f77b4\">actual DI</text>"
        );
        let _ = writeln!(
            svg,
            "<text x=\"{:.1}\" y=\"16\" font-size=\"12\" fill=\"#ff7f0e\">estimated DI</text>",
            PAD + 90.0
        );
        svg.push_str("</svg>\n");
        svg
    }

    fn grid(&self) -> Vec<Vec<String>> {
        let mut grid = vec![["course_code", "actual_di", "estimated_di", "abs_error"]
            .map(String::from)
            .to_vec()];
        for c in &self.report.comparisons {
            grid.push(vec![
                c.course_code.clone(),
                fmt1(c.actual_di),
                fmt1(c.estimated_di),
                fmt1(c.abs_error),
            ]);
        }
        grid.push(vec![
            "AVERAGE".to_string(),
            fmt1(self.report.mean_actual),
            fmt1(self.report.mean_estimated),
            fmt1(self.report.mean_abs_error),
        ]);
        grid
    }
}

impl Render for ValidationOutput {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => grid_csv(&self.grid()),
            OutputFormat::Json => to_json(self),
            OutputFormat::Table => {
                let r = &self.report;
                let mut grid = vec![[
                    "course_code",
                    "actual_di",
                    "estimated_di",
                    "abs_error",
                    "sq_error",
                    "final_di",
                ]
                .map(String::from)
                .to_vec()];
                for (c, f) in r.comparisons.iter().zip(&self.final_difficulty) {
                    grid.push(vec![
                        c.course_code.clone(),
                        fmt1(c.actual_di),
                        fmt1(c.estimated_di),
                        fmt1(c.abs_error),
                        format!("{:.2}", c.squared_error),
                        fmt1(f.final_di),
                    ]);
                }
                grid.push(vec![
                    "AVERAGE".into(),
                    fmt1(r.mean_actual),
                    fmt1(r.mean_estimated),
                    fmt1(r.mean_abs_error),
                    format!("{:.2}", r.mean_squared_error),
                    String::new(),
                ]);
                let mut out = format!(
                    "Validation: grade history (actual) vs Bloom/ABET (estimated)\nmode: {}  policy: {}  precision: {}\n",
                    self.mode,
                    self.policy,
                    match self.precision {
                        Precision::Rounded => "rounded",
                        Precision::Full => "full",
                    }
                );
                out.push_str(&grid_table(&grid));
                let _ = writeln!(
                    out,
                    "abs_error is |actual - estimated| (the column often labeled MSE); sq_error is its square."
                );
                let _ = writeln!(
                    out,
                    "accuracy: {}/{} = {:.3} at tolerance {}",
                    self.correct,
                    r.comparisons.len(),
                    r.accuracy,
                    r.tolerance
                );
                if !self.excluded.is_empty() {
                    let _ = writeln!(out, "excluded (no grades): {}", self.excluded.join(", "));
                }
                out
            }
        }
    }
}

// ---------------------------------------------------------------------------
// map-outcomes

#[derive(Debug, Clone, Serialize)]
pub struct MappingRow {
    pub text: String,
    #[serde(flatten)]
    pub result: MappingResult,
    pub draft_rubric: u32,
    pub needs_review: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MappingReport {
    pub suffix_rule: bool,
    pub results: Vec<MappingRow>,
}

pub fn map_outcomes(
    statements: &[OutcomeStatement],
    lexicon: &BloomLexicon,
    options: MatchOptions,
) -> MappingReport {
    MappingReport {
        suffix_rule: options.suffix_rule,
        results: statements
            .iter()
            .map(|s| {
                let result = map_outcome(s, lexicon, options);
                MappingRow {
                    text: s.text.clone(),
                    draft_rubric: result.draft_rubric(),
                    needs_review: result.needs_review(),
                    result,
                }
            })
            .collect(),
    }
}

impl MappingReport {
    fn grid(&self) -> Vec<Vec<String>> {
        let mut grid = vec![[
            "criterion_id",
            "levels",
            "draft_rubric",
            "matched",
            "ambiguous",
            "unmatched_tokens",
            "status",
        ]
        .map(String::from)
        .to_vec()];
        for row in &self.results {
            let r = &row.result;
            grid.push(vec![
                r.criterion_id.clone(),
                r.levels
                    .iter()
                    .map(|l| l.name())
                    .collect::<Vec<_>>()
                    .join("|"),
                row.draft_rubric.to_string(),
                r.matched
                    .iter()
                    .map(|m| format!("{}:{}", m.verb, m.level))
                    .collect::<Vec<_>>()
                    .join("|"),
                r.ambiguous.join("|"),
                r.unmatched_tokens_count.to_string(),
                if row.needs_review {
                    "needs-review"
                } else {
                    "ok"
                }
                .to_string(),
            ]);
        }
        grid
    }
}

impl Render for MappingReport {
    fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => grid_csv(&self.grid()),
            OutputFormat::Json => to_json(self),
            OutputFormat::Table => {
                let mut out = String::from("Outcome statements mapped to Bloom levels\n");
                out.push_str(&grid_table(&self.grid()));
                out
            }
        }
    }
}

// ---------------------------------------------------------------------------

fn grid_csv(grid: &[Vec<String>]) -> String {
    let mut writer = csv_writer();
    for row in grid {
        write_row(&mut writer, row);
    }
    finish_csv(writer)
}

fn grid_table(grid: &[Vec<String>]) -> String {
    let columns = grid.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..columns)
        .map(|i| {
            grid.iter()
                .filter_map(|r| r.get(i))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in grid {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, cell)| format!("{cell:<width$}", width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}
