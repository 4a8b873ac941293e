use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    collect_levels, csv_writer, finish_csv, from_json, split_pipe, to_json, write_row, CsvTable,
    Format, Input, LevelSpec,
};
use crate::error::{Error, Result};
use crate::taxonomy::{AbetCriterion, BloomLevel, CriterionCatalog, CriterionId};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    criteria: Vec<CriterionDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CriterionDoc {
    id: String,
    #[serde(default)]
    description: String,
    levels: Vec<LevelSpec>,
}

pub fn load_catalog(path: &Path) -> Result<CriterionCatalog> {
    parse_catalog(&Input::from_path(path)?)
}

/// Parses a criterion catalog. JSON documents may carry a `provenance`
/// label; otherwise the input's origin is used.
pub fn parse_catalog(input: &Input) -> Result<CriterionCatalog> {
    let origin = input.origin.as_str();
    let (rows, provenance) = match input.format {
        Format::Csv => (catalog_rows_csv(input)?, origin.to_string()),
        Format::Json => {
            let doc: CatalogDoc = from_json(&input.text, origin)?;
            let rows = doc
                .criteria
                .into_iter()
                .enumerate()
                .map(|(i, c)| {
                    let levels = c.levels.iter().map(LevelSpec::to_level);
                    (
                        format!("criteria[{i}]"),
                        c.id,
                        c.description,
                        collect_levels(levels),
                    )
                })
                .collect();
            (rows, doc.provenance.unwrap_or_else(|| origin.to_string()))
        }
    };

    let mut criteria: Vec<AbetCriterion> = Vec::with_capacity(rows.len());
    for (locator, id, description, levels) in rows {
        let build = || -> Result<AbetCriterion> {
            let id = CriterionId::new(&id)?;
            if criteria.iter().any(|c| c.id == id) {
                return Err(Error::DuplicateId { id: id.to_string() });
            }
            AbetCriterion::new(id, description, levels?)
        };
        let criterion = build().map_err(|e| e.at(origin, locator))?;
        criteria.push(criterion);
    }
    CriterionCatalog::new(criteria, provenance).map_err(|e| e.at(origin, "file"))
}

/// locator, id, description, parsed levels
type Row = (String, String, String, Result<BTreeSet<BloomLevel>>);

fn catalog_rows_csv(input: &Input) -> Result<Vec<Row>> {
    let table = CsvTable::read(
        &input.text,
        &input.origin,
        &["id", "levels"],
        &["description"],
        false,
    )?;
    Ok(table
        .rows
        .iter()
        .map(|(locator, record)| {
            let levels = split_pipe(table.get(record, "levels"))
                .into_iter()
                .map(str::parse);
            (
                locator.clone(),
                table.get(record, "id").to_string(),
                table.get(record, "description").to_string(),
                collect_levels(levels),
            )
        })
        .collect())
}

pub fn write_catalog(catalog: &CriterionCatalog, format: Format) -> String {
    match format {
        Format::Csv => {
            let mut writer = csv_writer();
            write_row(&mut writer, ["id", "description", "levels"]);
            for c in catalog.iter() {
                let levels: Vec<String> = c.levels.iter().map(|l| l.weight().to_string()).collect();
                write_row(
                    &mut writer,
                    [
                        c.id.as_str(),
                        c.description.as_str(),
                        levels.join("|").as_str(),
                    ],
                );
            }
            finish_csv(writer)
        }
        Format::Json => to_json(&CatalogDoc {
            provenance: Some(catalog.provenance.clone()),
            criteria: catalog
                .iter()
                .map(|c| CriterionDoc {
                    id: c.id.to_string(),
                    description: c.description.clone(),
                    levels: c
                        .levels
                        .iter()
                        .map(|l| LevelSpec::Weight(l.weight().into()))
                        .collect(),
                })
                .collect(),
        }),
    }
}
