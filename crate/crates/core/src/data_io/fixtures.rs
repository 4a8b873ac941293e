//! Data files shipped with the crate: the canonical outcome catalog, the
//! reference course mappings (as printed and canonical), their grade
//! history, a worked single-course example, the default verb lexicon
//! and the outcome statements.

use super::{Format, Input};

pub const FIXTURES: &[(&str, &str)] = &[
    (
        "abet_catalog.json",
        include_str!("../../data/abet_catalog.json"),
    ),
    (
        "abet_catalog.csv",
        include_str!("../../data/abet_catalog.csv"),
    ),
    (
        "reference_courses_asprinted.csv",
        include_str!("../../data/reference_courses_asprinted.csv"),
    ),
    (
        "reference_courses_canonical.csv",
        include_str!("../../data/reference_courses_canonical.csv"),
    ),
    (
        "reference_grades.csv",
        include_str!("../../data/reference_grades.csv"),
    ),
    (
        "worked_example.csv",
        include_str!("../../data/worked_example.csv"),
    ),
    (
        "bloom_lexicon.csv",
        include_str!("../../data/bloom_lexicon.csv"),
    ),
    (
        "abet_statements.csv",
        include_str!("../../data/abet_statements.csv"),
    ),
];

/// Looks a fixture up by file name (`abet_catalog.csv`) or stem (`abet_catalog`, which
/// picks the first listed match).
pub fn get(name: &str) -> Option<(&'static str, &'static str)> {
    FIXTURES
        .iter()
        .find(|(file, _)| *file == name)
        .or_else(|| {
            FIXTURES
                .iter()
                .find(|(file, _)| file.rsplit_once('.').map(|(stem, _)| stem) == Some(name))
        })
        .copied()
}

pub fn input(name: &str) -> Option<Input> {
    get(name).map(|(file, text)| Input::new(file, text, Format::from_path(file.as_ref())))
}

/// Writes every fixture into `dir`, creating it if needed. Returns the
/// written paths.
pub fn write_all(dir: &std::path::Path) -> crate::Result<Vec<std::path::PathBuf>> {
    let io = |path: &std::path::Path, source| crate::Error::Io {
        path: path.to_path_buf(),
        source,
    };
    std::fs::create_dir_all(dir).map_err(|e| io(dir, e))?;
    FIXTURES
        .iter()
        .map(|(file, text)| {
            let path = dir.join(file);
            std::fs::write(&path, text).map_err(|e| io(&path, e))?;
            Ok(path)
        })
        .collect()
}
