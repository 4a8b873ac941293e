use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    csv_writer, finish_csv, from_json, split_pipe, to_json, write_row, CsvTable, Format, Input,
};
use crate::difficulty::Course;
use crate::error::{Error, Result};
use crate::taxonomy::{CriterionCatalog, CriterionId};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurriculumDoc {
    courses: Vec<CourseDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CourseDoc {
    course_code: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    title: Option<String>,
    criteria: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    overrides: BTreeMap<String, u32>,
}

pub fn load_curriculum(path: &Path, catalog: &CriterionCatalog) -> Result<Vec<Course>> {
    parse_curriculum(&Input::from_path(path)?, catalog)
}

/// Parses courses and checks each against `catalog`.
pub fn parse_curriculum(input: &Input, catalog: &CriterionCatalog) -> Result<Vec<Course>> {
    let origin = input.origin.as_str();
    let docs: Vec<(String, Result<CourseDoc>)> = match input.format {
        Format::Csv => {
            let table = CsvTable::read(
                &input.text,
                origin,
                &["course_code", "criteria"],
                &["title", "overrides"],
                false,
            )?;
            table
                .rows
                .iter()
                .map(|(locator, record)| {
                    let doc = || -> Result<CourseDoc> {
                        let title = table.get(record, "title");
                        Ok(CourseDoc {
                            course_code: table.get(record, "course_code").to_string(),
                            title: (!title.is_empty()).then(|| title.to_string()),
                            criteria: split_pipe(table.get(record, "criteria"))
                                .into_iter()
                                .map(str::to_string)
                                .collect(),
                            overrides: parse_overrides(table.get(record, "overrides"))?,
                        })
                    };
                    (locator.clone(), doc())
                })
                .collect()
        }
        Format::Json => {
            let doc: CurriculumDoc = from_json(&input.text, origin)?;
            doc.courses
                .into_iter()
                .enumerate()
                .map(|(i, c)| (format!("courses[{i}]"), Ok(c)))
                .collect()
        }
    };

    let mut courses: Vec<Course> = Vec::with_capacity(docs.len());
    for (locator, doc) in docs {
        let course = doc
            .and_then(|doc| build_course(doc, catalog))
            .map_err(|e| e.at(origin, &locator))?;
        if courses.iter().any(|c| c.code == course.code) {
            return Err(Error::DuplicateId { id: course.code }.at(origin, locator));
        }
        courses.push(course);
    }
    Ok(courses)
}

fn build_course(doc: CourseDoc, catalog: &CriterionCatalog) -> Result<Course> {
    let criteria = doc
        .criteria
        .iter()
        .map(CriterionId::new)
        .collect::<Result<Vec<_>>>()?;
    let overrides = doc
        .overrides
        .iter()
        .map(|(id, points)| Ok((CriterionId::new(id)?, *points)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let course = Course::new(doc.course_code, doc.title, criteria, overrides)?;
    course.check_resolves(catalog)?;
    Ok(course)
}

/// `h:5|j:6` into a map; an empty cell means no overrides.
fn parse_overrides(cell: &str) -> Result<BTreeMap<String, u32>> {
    let mut map = BTreeMap::new();
    for pair in split_pipe(cell) {
        let (id, points) = pair
            .split_once(':')
            .ok_or_else(|| Error::InvalidValue(format!("override {pair:?} is not `id:points`")))?;
        let points: u32 = points.trim().parse().map_err(|_| {
            Error::InvalidValue(format!("override {pair:?} has non-integer points"))
        })?;
        if map.insert(id.trim().to_string(), points).is_some() {
            return Err(Error::InvalidValue(format!(
                "override for `{}` repeated",
                id.trim()
            )));
        }
    }
    Ok(map)
}

pub fn write_curriculum(courses: &[Course], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut writer = csv_writer();
            write_row(
                &mut writer,
                ["course_code", "title", "criteria", "overrides"],
            );
            for course in courses {
                let criteria: Vec<&str> = course.criteria.iter().map(CriterionId::as_str).collect();
                let overrides: Vec<String> = course
                    .cell_overrides
                    .iter()
                    .map(|(id, points)| format!("{id}:{points}"))
                    .collect();
                write_row(
                    &mut writer,
                    [
                        course.code.as_str(),
                        course.title.as_deref().unwrap_or(""),
                        criteria.join("|").as_str(),
                        overrides.join("|").as_str(),
                    ],
                );
            }
            finish_csv(writer)
        }
        Format::Json => to_json(&CurriculumDoc {
            courses: courses
                .iter()
                .map(|c| CourseDoc {
                    course_code: c.code.clone(),
                    title: c.title.clone(),
                    criteria: c.criteria.iter().map(|id| id.to_string()).collect(),
                    overrides: c
                        .cell_overrides
                        .iter()
                        .map(|(id, p)| (id.to_string(), *p))
                        .collect(),
                })
                .collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data_io::fixtures;

    fn csv(text: &str) -> Result<Vec<Course>> {
        parse_curriculum(
            &Input::new("cur.csv", text, Format::Csv),
            &CriterionCatalog::canonical(),
        )
    }

    #[test]
    fn as_printed_fixture() {
        let courses = parse_curriculum(
            &fixtures::input("reference_courses_asprinted").unwrap(),
            &CriterionCatalog::canonical(),
        )
        .unwrap();
        assert_eq!(courses.len(), 11);
        let c1: Vec<&str> = courses[0]
            .criteria
            .iter()
            .map(CriterionId::as_str)
            .collect();
        assert_eq!(c1, ["a", "b", "e", "i", "k", "l"]);
        let with_overrides: Vec<&str> = courses
            .iter()
            .filter(|c| c.has_overrides())
            .map(|c| c.code.as_str())
            .collect();
        assert_eq!(with_overrides, ["C8", "C9", "C10", "C11"]);
    }

    #[test]
    fn unknown_criterion() {
        let err = csv("course_code,title,criteria,overrides\nX1,,a|z,\n").unwrap_err();
        match err.root() {
            Error::UnresolvedCriterion { course, id } => {
                assert_eq!((course.as_str(), id.as_str()), ("X1", "z"))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn empty_criteria() {
        let err = csv("course_code,criteria\nX1,\n").unwrap_err();
        assert!(matches!(err.root(), Error::EmptyCriteria { .. }));
    }

    #[test]
    fn bad_overrides() {
        for cell in ["h5", "h:five", "h:5|h:4", "a:0", "b:3"] {
            let text = format!("course_code,criteria,overrides\nX1,a|h,{cell}\n");
            assert!(csv(&text).is_err(), "{cell}");
        }
        let ok = csv("course_code,criteria,overrides\nX1,a|h, h:5 \n").unwrap();
        assert_eq!(
            ok[0].cell_overrides.values().copied().collect::<Vec<_>>(),
            [5]
        );
    }

    #[test]
    fn duplicate_course_codes() {
        let err = csv("course_code,criteria\nX,a\nX,b\n").unwrap_err();
        assert!(matches!(err.root(), Error::DuplicateId { .. }));
    }

    #[test]
    fn json_mirror() {
        let text = r#"{"courses":[{"course_code":"C9","criteria":["a","h","k","l"],"overrides":{"h":5}}]}"#;
        let courses = parse_curriculum(
            &Input::new("c.json", text, Format::Json),
            &CriterionCatalog::canonical(),
        )
        .unwrap();
        assert_eq!(
            courses,
            csv("course_code,criteria,overrides\nC9,a|h|k|l,h:5\n").unwrap()
        );
    }
}
