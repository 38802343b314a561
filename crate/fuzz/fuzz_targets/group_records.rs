#![no_main]

use libfuzzer_sys::fuzz_target;
use truncgal::galois::groups::{parse_group_lines, transitive};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lines) = parse_group_lines(text) {
        for line in lines.iter().take(8) {
            for g in &line.generators {
                assert_eq!(g.cycle_type().degree(), line.degree);
            }
            let _ = transitive(line);
        }
    }
});
