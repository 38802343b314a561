#![no_main]

use libfuzzer_sys::fuzz_target;
use truncgal::format::{
    int_poly_from_json, int_poly_to_json, rat_poly_from_json, rat_poly_to_json,
};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = rat_poly_from_json(text) {
        let json = serde_json::to_string(&rat_poly_to_json(&p)).unwrap();
        assert_eq!(rat_poly_from_json(&json).unwrap(), p);
    }
    if let Ok(p) = int_poly_from_json(text) {
        let json = serde_json::to_string(&int_poly_to_json(&p)).unwrap();
        assert_eq!(int_poly_from_json(&json).unwrap(), p);
    }
});
