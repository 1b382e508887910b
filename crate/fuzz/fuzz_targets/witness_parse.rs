#![no_main]

use abcover::harness::WitnessEntry;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(entry) = text.parse::<WitnessEntry>() {
        let again: WitnessEntry = entry.to_string().parse().expect("printed witness parses");
        assert_eq!(again, entry);
        // Replay may reject the certificate but must not panic.
        let _ = entry.replay(1, 2);
    }
});
