#![no_main]

use abcover::enumerate::ingest_graph6;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let mut seen = 0;
    for g in ingest_graph6(data) {
        match g {
            Ok(_) => seen += 1,
            Err(e) => {
                assert!(matches!(e, abcover::Error::Line { .. }));
                break;
            }
        }
    }
    assert!(seen <= data.len());
});
