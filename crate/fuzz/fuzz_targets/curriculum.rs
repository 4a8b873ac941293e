#![no_main]
use course_difficulty::data_io::{parse_curriculum, Format, Input};
use course_difficulty::difficulty::{bloom_difficulty, RubricMode};
use course_difficulty::taxonomy::CriterionCatalog;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let catalog = CriterionCatalog::canonical();
    for format in [Format::Csv, Format::Json] {
        if let Ok(courses) = parse_curriculum(&Input::new("fuzz", text, format), &catalog) {
            // accepted courses must always score
            for course in &courses {
                for mode in [RubricMode::Canonical, RubricMode::AsPrinted] {
                    bloom_difficulty(&mode.apply(course), &catalog).unwrap();
                }
            }
        }
    }
});
