#![no_main]
use course_difficulty::data_io::{parse_grades, Format, Input};
use course_difficulty::difficulty::grade_difficulty;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for format in [Format::Csv, Format::Json] {
        if let Ok(book) = parse_grades(&Input::new("fuzz", text, format)) {
            for history in book.values() {
                let di = grade_difficulty(history).unwrap();
                assert!((0.0..=5.0).contains(&di));
            }
        }
    }
});
