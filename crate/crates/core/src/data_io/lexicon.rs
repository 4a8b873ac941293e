use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    collect_levels, csv_writer, finish_csv, from_json, split_pipe, to_json, write_row, CsvTable,
    Format, Input, LevelSpec,
};
use crate::error::{Error, Result};
use crate::taxonomy::{normalize_verb, BloomLexicon};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconDoc {
    entries: Vec<EntryDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    verb: String,
    levels: Vec<LevelSpec>,
}

pub fn load_lexicon(path: &Path) -> Result<BloomLexicon> {
    parse_lexicon(&Input::from_path(path)?)
}

/// One record per verb, carrying every level it belongs to. CSV lexicons
/// may contain `#` comment lines.
pub fn parse_lexicon(input: &Input) -> Result<BloomLexicon> {
    let origin = input.origin.as_str();
    let entries: Vec<(String, String, Vec<LevelSpec>)> = match input.format {
        Format::Csv => {
            let table = CsvTable::read(&input.text, origin, &["verb", "levels"], &[], true)?;
            table
                .rows
                .iter()
                .map(|(locator, record)| {
                    let levels = split_pipe(table.get(record, "levels"))
                        .into_iter()
                        .map(|s| LevelSpec::Name(s.to_string()))
                        .collect();
                    (
                        locator.clone(),
                        table.get(record, "verb").to_string(),
                        levels,
                    )
                })
                .collect()
        }
        Format::Json => {
            let doc: LexiconDoc = from_json(&input.text, origin)?;
            doc.entries
                .into_iter()
                .enumerate()
                .map(|(i, e)| (format!("entries[{i}]"), e.verb, e.levels))
                .collect()
        }
    };

    let mut pairs = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (locator, verb, levels) in entries {
        let mut check = || -> Result<()> {
            let levels = collect_levels(levels.iter().map(LevelSpec::to_level))?;
            if levels.is_empty() {
                return Err(Error::InvalidLexicon(format!(
                    "verb {verb:?} has no levels"
                )));
            }
            let key = normalize_verb(&verb)?;
            if !seen.insert(key.clone()) {
                return Err(Error::DuplicateId { id: key });
            }
            pairs.extend(levels.into_iter().map(|l| (key.clone(), l)));
            Ok(())
        };
        check().map_err(|e| e.at(origin, locator))?;
    }
    BloomLexicon::new(pairs).map_err(|e| e.at(origin, "file"))
}

pub fn write_lexicon(lexicon: &BloomLexicon, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut writer = csv_writer();
            write_row(&mut writer, ["verb", "levels"]);
            for (verb, levels) in lexicon.entries() {
                let names: Vec<&str> = levels.iter().map(|l| l.name()).collect();
                write_row(&mut writer, [verb, names.join("|").as_str()]);
            }
            finish_csv(writer)
        }
        Format::Json => to_json(&LexiconDoc {
            entries: lexicon
                .entries()
                .map(|(verb, levels)| EntryDoc {
                    verb: verb.to_string(),
                    levels: levels
                        .iter()
                        .map(|l| LevelSpec::Name(l.name().to_string()))
                        .collect(),
                })
                .collect(),
        }),
    }
}
