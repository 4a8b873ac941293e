//! On-disk formats.
//!
//! Every input has a CSV form (primary) and a JSON mirror; the format is
//! chosen from the file extension. All CSV files are UTF-8 with a header
//! row. Parsers work on in-memory text plus an origin label used in
//! diagnostics, so they can be driven without touching the filesystem.
//!
//! | input      | CSV columns                              |
//! |------------|------------------------------------------|
//! | catalog    | `id,description,levels`                  |
//! | curriculum | `course_code,title,criteria,overrides`   |
//! | grades     | `course_code,generation,kind,value`      |
//! | lexicon    | `verb,levels`                            |
//! | statements | `criterion_id,text`                      |
//!
//! Multi-valued cells are pipe-separated: `1|2|3`, `a|h|k|l`, `h:5|j:6`.

mod catalog;
mod curriculum;
pub mod fixtures;
mod grades;
mod lexicon;
mod statements;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::difficulty::{Course, GradeHistory};
use crate::error::{Error, Result};
use crate::taxonomy::{BloomLevel, BloomLexicon, CriterionCatalog};

pub use catalog::{load_catalog, parse_catalog, write_catalog};
pub use curriculum::{load_curriculum, parse_curriculum, write_curriculum};
pub use grades::{load_grades, parse_grades, write_grades, GradeBook};
pub use lexicon::{load_lexicon, parse_lexicon, write_lexicon};
pub use statements::{load_statements, parse_statements, write_statements};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    /// `.json` files are JSON; everything else is CSV.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// The raw content of one input file, with where it came from.
#[derive(Debug, Clone)]
pub struct Input {
    pub origin: String,
    pub text: String,
    pub format: Format,
}

impl Input {
    pub fn new(origin: impl Into<String>, text: impl Into<String>, format: Format) -> Self {
        Input {
            origin: origin.into(),
            text: text.into(),
            format,
        }
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let bytes = std::fs::read(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let text = String::from_utf8(bytes).map_err(|e| {
            Error::parse(
                &path.display().to_string(),
                "file",
                format!("not UTF-8: {e}"),
            )
        })?;
        Ok(Input::new(
            path.display().to_string(),
            text,
            Format::from_path(path),
        ))
    }

    /// An existing file path, or else the name of a shipped fixture
    /// (`abet_catalog`, `reference_courses_asprinted`, ...).
    pub fn resolve(arg: &str) -> Result<Self> {
        let path = Path::new(arg);
        if path.exists() {
            return Input::from_path(path);
        }
        fixtures::input(arg).ok_or_else(|| Error::Io {
            path: PathBuf::from(arg),
            source: std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "no such file or shipped fixture",
            ),
        })
    }

    pub fn source_info(&self) -> SourceInfo {
        SourceInfo {
            origin: self.origin.clone(),
            sha256: hex::encode(Sha256::digest(self.text.as_bytes())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SourceInfo {
    pub origin: String,
    pub sha256: String,
}

/// Everything the difficulty pipeline reads, cross-validated.
#[derive(Debug, Clone)]
pub struct DataBundle {
    pub catalog: CriterionCatalog,
    pub lexicon: Option<BloomLexicon>,
    pub courses: Vec<Course>,
    pub grades: GradeBook,
    pub provenance: Vec<SourceInfo>,
}

impl DataBundle {
    /// Parses catalog, curriculum and optional grades, checking that every
    /// course criterion resolves in the catalog.
    pub fn load(catalog: &Input, curriculum: &Input, grades: Option<&Input>) -> Result<Self> {
        let parsed_catalog = parse_catalog(catalog)?;
        let courses = parse_curriculum(curriculum, &parsed_catalog)?;
        let mut provenance = vec![catalog.source_info(), curriculum.source_info()];
        let grades = match grades {
            Some(input) => {
                provenance.push(input.source_info());
                parse_grades(input)?
            }
            None => GradeBook::new(),
        };
        Ok(DataBundle {
            catalog: parsed_catalog,
            lexicon: None,
            courses,
            grades,
            provenance,
        })
    }

    pub fn with_lexicon(mut self, lexicon: &Input) -> Result<Self> {
        self.lexicon = Some(parse_lexicon(lexicon)?);
        self.provenance.push(lexicon.source_info());
        Ok(self)
    }

    /// Grade histories whose course code is not in the curriculum.
    pub fn unmatched_grade_codes(&self) -> Vec<&str> {
        self.grades
            .keys()
            .filter(|code| !self.courses.iter().any(|c| &c.code == *code))
            .map(String::as_str)
            .collect()
    }

    /// Curriculum courses with no grade history.
    pub fn courses_without_grades(&self) -> Vec<&str> {
        self.courses
            .iter()
            .filter(|c| !self.grades.contains_key(&c.code))
            .map(|c| c.code.as_str())
            .collect()
    }

    pub fn history(&self, course_code: &str) -> Option<&GradeHistory> {
        self.grades.get(course_code)
    }
}

// ---------------------------------------------------------------------------
// shared CSV / JSON helpers

/// Header-indexed CSV rows with line locators.
pub(crate) struct CsvTable {
    columns: HashMap<String, usize>,
    pub rows: Vec<(String, csv::StringRecord)>,
}

impl CsvTable {
    /// Reads `text`, requiring every column in `required`, allowing those in
    /// `optional` and rejecting anything else. Input that is only whitespace
    /// yields no rows.
    pub fn read(
        text: &str,
        origin: &str,
        required: &[&str],
        optional: &[&str],
        comments: bool,
    ) -> Result<CsvTable> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let mut table = CsvTable {
            columns: HashMap::new(),
            rows: Vec::new(),
        };
        let meaningful = text
            .lines()
            .any(|l| !l.trim().is_empty() && !(comments && l.starts_with('#')));
        if !meaningful {
            return Ok(table);
        }
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .comment(comments.then_some(b'#'))
            .from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::parse(origin, "header", e))?
            .clone();
        for (index, name) in headers.iter().enumerate() {
            let name = name.trim().to_ascii_lowercase();
            if !required.contains(&name.as_str()) && !optional.contains(&name.as_str()) {
                return Err(Error::parse(
                    origin,
                    "header",
                    format!("unknown column `{name}`"),
                ));
            }
            if table.columns.insert(name.clone(), index).is_some() {
                return Err(Error::parse(
                    origin,
                    "header",
                    format!("column `{name}` repeated"),
                ));
            }
        }
        if let Some(missing) = required.iter().find(|c| !table.columns.contains_key(**c)) {
            return Err(Error::parse(
                origin,
                "header",
                format!("missing column `{missing}`"),
            ));
        }
        for record in reader.records() {
            let record = record.map_err(|e| {
                let locator = e
                    .position()
                    .map(|p| format!("line {}", p.line()))
                    .unwrap_or_else(|| "record".into());
                Error::parse(origin, locator, e)
            })?;
            let line = record.position().map(|p| p.line()).unwrap_or_default();
            table.rows.push((format!("line {line}"), record));
        }
        Ok(table)
    }

    /// Field value, or `""` when the column is absent.
    pub fn get<'r>(&self, record: &'r csv::StringRecord, column: &str) -> &'r str {
        self.columns
            .get(column)
            .and_then(|&i| record.get(i))
            .unwrap_or("")
    }
}

pub(crate) fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

pub(crate) fn finish_csv(writer: csv::Writer<Vec<u8>>) -> String {
    let bytes = writer.into_inner().expect("in-memory csv writer");
    String::from_utf8(bytes).expect("csv output from UTF-8 fields")
}

pub(crate) fn write_row<I, T>(writer: &mut csv::Writer<Vec<u8>>, row: I)
where
    I: IntoIterator<Item = T>,
    T: AsRef<[u8]>,
{
    writer.write_record(row).expect("in-memory csv writer");
}

pub(crate) fn from_json<T: serde::de::DeserializeOwned>(text: &str, origin: &str) -> Result<T> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            origin,
            format!("line {} column {}", e.line(), e.column()),
            e,
        )
    })
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

/// A Bloom level written as a weight or a name.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum LevelSpec {
    Weight(i64),
    Name(String),
}

impl LevelSpec {
    pub fn to_level(&self) -> Result<BloomLevel> {
        match self {
            LevelSpec::Weight(w) => u32::try_from(*w)
                .ok()
                .and_then(BloomLevel::from_weight)
                .ok_or_else(|| Error::LevelOutOfRange {
                    value: w.to_string(),
                }),
            LevelSpec::Name(name) => name.parse(),
        }
    }
}

/// Splits a pipe-separated cell; an empty cell has no items.
pub(crate) fn split_pipe(cell: &str) -> Vec<&str> {
    if cell.trim().is_empty() {
        Vec::new()
    } else {
        cell.split('|').map(str::trim).collect()
    }
}

/// Collects parsed levels, rejecting repeats.
pub(crate) fn collect_levels<I>(items: I) -> Result<BTreeSet<BloomLevel>>
where
    I: IntoIterator<Item = Result<BloomLevel>>,
{
    let mut levels = BTreeSet::new();
    for level in items {
        let level = level?;
        if !levels.insert(level) {
            return Err(Error::InvalidValue(format!("level {level} listed twice")));
        }
    }
    Ok(levels)
}
