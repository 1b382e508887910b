#![no_main]

use abcover::graph6;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = graph6::parse(text) {
        // Accepted input is canonical: re-encoding reproduces the body.
        let body = text.strip_prefix(">>graph6<<").unwrap_or(text);
        let body = body.trim_end_matches(['\n', '\r']);
        assert_eq!(graph6::encode(&g), body);
    }
});
