#![no_main]

use libfuzzer_sys::fuzz_target;
use truncgal::repro::cache::{cache_key, CacheEntry};

fuzz_target!(|data: &[u8]| {
    if let Ok(e) = CacheEntry::decode(data) {
        assert_eq!(e.key, cache_key(&e.op, &e.input, &e.version));
        let bytes = serde_json::to_vec(&e).unwrap();
        assert_eq!(CacheEntry::decode(&bytes).unwrap(), e);
    }
});
