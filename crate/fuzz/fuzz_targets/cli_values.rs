#![no_main]

use abcover::harness::{CorpusSpec, TheoremId};
use libfuzzer_sys::fuzz_target;

// Values accepted by --corpus, --theorem and --names.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = text.parse::<CorpusSpec>() {
        assert_eq!(spec.to_string().parse::<CorpusSpec>().unwrap(), spec);
    }
    if let Ok(id) = text.parse::<TheoremId>() {
        assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
    }
});
