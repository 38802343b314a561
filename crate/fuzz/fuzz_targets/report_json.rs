#![no_main]

use libfuzzer_sys::fuzz_target;
use truncgal::repro::{emit, Format, TableReport};

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = serde_json::from_slice::<TableReport>(data) {
        let bytes = serde_json::to_vec(&r).unwrap();
        let again: TableReport = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(again, r);
        for f in [Format::Text, Format::Csv] {
            let _ = emit(&r, f);
        }
    }
});
