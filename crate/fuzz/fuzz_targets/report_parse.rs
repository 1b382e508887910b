#![no_main]

use abcover::harness::report::{parse_reports, to_text};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(reports) = parse_reports(text) {
        // Whatever parses must print and parse back to the same records.
        let again = parse_reports(&to_text(&reports)).expect("printed reports parse");
        assert_eq!(again, reports);
    }
});
