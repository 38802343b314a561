#![no_main]

use libfuzzer_sys::fuzz_target;
use truncgal::galois::GaloisIdentification;

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = serde_json::from_slice::<GaloisIdentification>(data) {
        let bytes = serde_json::to_vec(&v).unwrap();
        let again: GaloisIdentification = serde_json::from_slice(&bytes).unwrap();
        assert_eq!(again, v);
        let _ = v.observed_types();
        let _ = v.certainty.label();
    }
});
