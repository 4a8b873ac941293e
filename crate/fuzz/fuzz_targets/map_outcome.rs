#![no_main]
use course_difficulty::data_io::{fixtures, parse_lexicon};
use course_difficulty::mapper::{map_outcome, tokenize, MatchOptions, OutcomeStatement};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let text = String::from_utf8_lossy(data);
    let _ = tokenize(&text);
    let Ok(statement) = OutcomeStatement::new("x", &*text) else { return };
    let lexicon = parse_lexicon(&fixtures::input("bloom_lexicon").unwrap()).unwrap();
    for suffix_rule in [false, true] {
        let result = map_outcome(&statement, &lexicon, MatchOptions { suffix_rule });
        assert!(result.draft_rubric() <= 21);
    }
});
