#![no_main]
use course_difficulty::data_io::{parse_statements, Format, Input};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for format in [Format::Csv, Format::Json] {
        let _ = parse_statements(&Input::new("fuzz", text, format));
    }
});
