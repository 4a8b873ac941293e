use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use super::{csv_writer, finish_csv, from_json, to_json, write_row, CsvTable, Format, Input};
use crate::difficulty::{GenerationRecord, GradeHistory, GradeKind};
use crate::error::{Error, Result};

/// Grade histories keyed by course code, in order of first appearance.
pub type GradeBook = IndexMap<String, GradeHistory>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GradesDoc {
    records: Vec<RecordDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordDoc {
    course_code: String,
    generation: String,
    kind: GradeKind,
    value: f64,
}

pub fn load_grades(path: &Path) -> Result<GradeBook> {
    parse_grades(&Input::from_path(path)?)
}

/// Parses grade records, grouping them by course while keeping the file
/// order of generations. Every record must state its `kind`.
pub fn parse_grades(input: &Input) -> Result<GradeBook> {
    let origin = input.origin.as_str();
    let records: Vec<(String, Result<RecordDoc>)> = match input.format {
        Format::Csv => {
            let table = CsvTable::read(
                &input.text,
                origin,
                &["course_code", "generation", "kind", "value"],
                &[],
                false,
            )?;
            table
                .rows
                .iter()
                .map(|(locator, record)| {
                    let kind = table.get(record, "kind").trim();
                    let raw_value = table.get(record, "value").trim();
                    let doc = if kind.is_empty() {
                        Err(Error::InvalidValue(
                            "missing grade kind (`percent` or `di`)".into(),
                        ))
                    } else {
                        kind.parse::<GradeKind>().and_then(|kind| {
                            let value = raw_value.parse::<f64>().map_err(|_| {
                                Error::parse(
                                    origin,
                                    locator.as_str(),
                                    format!("value {raw_value:?} is not a number"),
                                )
                            })?;
                            Ok(RecordDoc {
                                course_code: table.get(record, "course_code").to_string(),
                                generation: table.get(record, "generation").to_string(),
                                kind,
                                value,
                            })
                        })
                    };
                    (locator.clone(), doc)
                })
                .collect()
        }
        Format::Json => {
            let doc: GradesDoc = from_json(&input.text, origin)?;
            doc.records
                .into_iter()
                .enumerate()
                .map(|(i, r)| (format!("records[{i}]"), Ok(r)))
                .collect()
        }
    };

    let mut book = GradeBook::new();
    for (locator, record) in records {
        let add = |book: &mut GradeBook| -> Result<()> {
            let record = record?;
            let code = record.course_code.trim();
            let label = record.generation.trim();
            if code.is_empty() || label.is_empty() {
                return Err(Error::InvalidValue(
                    "course_code and generation are required".into(),
                ));
            }
            let generation = GenerationRecord::new(label, record.kind, record.value)?;
            let history = book
                .entry(code.to_string())
                .or_insert_with(|| GradeHistory {
                    course_code: code.to_string(),
                    generations: Vec::new(),
                });
            if history.generations.iter().any(|g| g.label == label) {
                return Err(Error::DuplicateId {
                    id: format!("{code}/{label}"),
                });
            }
            history.generations.push(generation);
            Ok(())
        };
        add(&mut book).map_err(|e| match e {
            e @ Error::Parse { .. } => e,
            e => e.at(origin, locator),
        })?;
    }
    Ok(book)
}

pub fn write_grades(book: &GradeBook, format: Format) -> String {
    let records = book.values().flat_map(|h| {
        h.generations.iter().map(move |g| RecordDoc {
            course_code: h.course_code.clone(),
            generation: g.label.clone(),
            kind: g.kind,
            value: g.value,
        })
    });
    match format {
        Format::Csv => {
            let mut writer = csv_writer();
            write_row(&mut writer, ["course_code", "generation", "kind", "value"]);
            for r in records {
                // `{}` on f64 is the shortest text that parses back exactly
                let value = r.value.to_string();
                write_row(
                    &mut writer,
                    [
                        r.course_code.as_str(),
                        r.generation.as_str(),
                        r.kind.label(),
                        value.as_str(),
                    ],
                );
            }
            finish_csv(writer)
        }
        Format::Json => to_json(&GradesDoc {
            records: records.collect(),
        }),
    }
}
