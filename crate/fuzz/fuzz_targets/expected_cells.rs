#![no_main]

use libfuzzer_sys::fuzz_target;
use truncgal::repro::parse_expected_cells;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cells) = parse_expected_cells(text) {
        for c in &cells {
            assert!(c.order >= 1 && c.order <= 1000);
            assert!(c.table.columns().contains(&c.column.as_str()));
        }
    }
});
