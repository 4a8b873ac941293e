#![allow(dead_code)]

use std::collections::BTreeMap;

use course_difficulty::data_io::GradeBook;
use course_difficulty::difficulty::{Course, GenerationRecord, GradeHistory, GradeKind};
use course_difficulty::taxonomy::{AbetCriterion, BloomLevel, CriterionCatalog, CriterionId};
use proptest::prelude::*;
use proptest::sample::subsequence;

pub fn level_set() -> impl Strategy<Value = Vec<BloomLevel>> {
    subsequence(BloomLevel::ALL.to_vec(), 1..=6)
}

/// Ids drawn from a-m plus a few program-specific tokens.
pub fn id_pool() -> Vec<String> {
    let mut ids: Vec<String> = ('a'..='m').map(|c| c.to_string()).collect();
    ids.extend(["PSO1", "PSO2", "x9"].map(String::from));
    ids
}

fn free_text() -> impl Strategy<Value = String> {
    // commas, quotes and newlines exercise CSV quoting
    "[ -~\n]{0,40}"
}

pub fn catalog() -> impl Strategy<Value = CriterionCatalog> {
    subsequence(id_pool(), 1..=16)
        .prop_flat_map(|ids| {
            let n = ids.len();
            (
                Just(ids),
                prop::collection::vec((free_text(), level_set()), n),
            )
        })
        .prop_map(|(ids, rows)| {
            let criteria = ids
                .into_iter()
                .zip(rows)
                .map(|(id, (description, levels))| {
                    AbetCriterion::new(CriterionId::new(id).unwrap(), description, levels).unwrap()
                });
            CriterionCatalog::new(criteria, "generated").unwrap()
        })
}

/// A catalog together with courses that resolve in it.
pub fn catalog_with_courses() -> impl Strategy<Value = (CriterionCatalog, Vec<Course>)> {
    catalog()
        .prop_flat_map(|catalog| {
            let ids: Vec<CriterionId> = catalog.ids().cloned().collect();
            let max = ids.len();
            let course = (
                subsequence(ids.clone(), 1..=max).prop_shuffle(),
                prop::option::of("[A-Za-z][A-Za-z ]{0,12}"),
                prop::collection::vec((any::<prop::sample::Index>(), 1u32..=21), 0..3),
            );
            (Just(catalog), prop::collection::vec(course, 1..8))
        })
        .prop_map(|(catalog, raw)| {
            let courses = raw
                .into_iter()
                .enumerate()
                .map(|(i, (criteria, title, picks))| {
                    let overrides: BTreeMap<CriterionId, u32> = picks
                        .into_iter()
                        .map(|(ix, points)| (ix.get(&criteria).clone(), points))
                        .collect();
                    Course::new(format!("C{i}"), title, criteria, overrides).unwrap()
                })
                .collect();
            (catalog, courses)
        })
}

fn generation() -> impl Strategy<Value = (GradeKind, f64)> {
    prop_oneof![
        (0.0f64..=100.0).prop_map(|v| (GradeKind::Percent, v)),
        (0.0f64..=5.0).prop_map(|v| (GradeKind::Di, v)),
    ]
}

pub fn grade_book() -> impl Strategy<Value = GradeBook> {
    prop::collection::vec(prop::collection::vec(generation(), 1..5), 1..8).prop_map(|courses| {
        courses
            .into_iter()
            .enumerate()
            .map(|(i, gens)| {
                let code = format!("K{i}");
                let generations = gens
                    .into_iter()
                    .enumerate()
                    .map(|(g, (kind, value))| {
                        GenerationRecord::new(format!("Generation {}", g + 1), kind, value).unwrap()
                    })
                    .collect();
                (code.clone(), GradeHistory::new(code, generations).unwrap())
            })
            .collect()
    })
}
