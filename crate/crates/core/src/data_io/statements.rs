use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{csv_writer, finish_csv, from_json, to_json, write_row, CsvTable, Format, Input};
use crate::error::Result;
use crate::mapper::OutcomeStatement;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StatementsDoc {
    statements: Vec<OutcomeStatement>,
}

pub fn load_statements(path: &Path) -> Result<Vec<OutcomeStatement>> {
    parse_statements(&Input::from_path(path)?)
}

/// Outcome statements, `criterion_id,text`. An empty file has none.
pub fn parse_statements(input: &Input) -> Result<Vec<OutcomeStatement>> {
    let origin = input.origin.as_str();
    let raw: Vec<(String, String, String)> = match input.format {
        Format::Csv => {
            let table = CsvTable::read(&input.text, origin, &["criterion_id", "text"], &[], false)?;
            table
                .rows
                .iter()
                .map(|(locator, r)| {
                    (
                        locator.clone(),
                        table.get(r, "criterion_id").trim().to_string(),
                        table.get(r, "text").to_string(),
                    )
                })
                .collect()
        }
        Format::Json if input.text.trim().is_empty() => Vec::new(),
        Format::Json => {
            let doc: StatementsDoc = from_json(&input.text, origin)?;
            doc.statements
                .into_iter()
                .enumerate()
                .map(|(i, s)| (format!("statements[{i}]"), s.criterion_id, s.text))
                .collect()
        }
    };
    raw.into_iter()
        .map(|(locator, id, text)| {
            OutcomeStatement::new(id, text).map_err(|e| e.at(origin, locator))
        })
        .collect()
}

pub fn write_statements(statements: &[OutcomeStatement], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut writer = csv_writer();
            write_row(&mut writer, ["criterion_id", "text"]);
            for s in statements {
                write_row(&mut writer, [s.criterion_id.as_str(), s.text.as_str()]);
            }
            finish_csv(writer)
        }
        Format::Json => to_json(&StatementsDoc {
            statements: statements.to_vec(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_io::fixtures;

    #[test]
    fn outcome_fixture_has_thirteen_statements() {
        let statements = parse_statements(&fixtures::input("abet_statements").unwrap()).unwrap();
        assert_eq!(statements.len(), 13);
        assert_eq!(statements[0].criterion_id, "a");
        assert!(statements[0]
            .text
            .starts_with("an ability to apply knowledge"));
    }

    #[test]
    fn empty_inputs() {
        for (text, format) in [
            ("", Format::Csv),
            ("criterion_id,text\n", Format::Csv),
            ("  ", Format::Json),
        ] {
            assert!(parse_statements(&Input::new("s", text, format))
                .unwrap()
                .is_empty());
        }
        let blank_text = Input::new("s.csv", "criterion_id,text\nq,  \n", Format::Csv);
        assert!(parse_statements(&blank_text).is_err());
    }
}
