#![no_main]

use libfuzzer_sys::fuzz_target;
use truncgal::format::{format_int_poly, format_rat_poly, parse_int_poly, parse_rat_poly};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if text.len() > 4096 {
        return;
    }
    if let Ok(p) = parse_rat_poly(text) {
        let again = parse_rat_poly(&format_rat_poly(&p)).expect("printed form parses");
        assert_eq!(again, p);
    }
    if let Ok(p) = parse_int_poly(text) {
        let again = parse_int_poly(&format_int_poly(&p)).expect("printed form parses");
        assert_eq!(again, p);
    }
});
