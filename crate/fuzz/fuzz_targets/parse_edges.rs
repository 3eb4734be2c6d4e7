#![no_main]

use libfuzzer_sys::fuzz_target;
use regge_core::parse::parse_edges;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(e) = parse_edges(s) {
        assert!(e.as_array().iter().all(|l| l.is_finite() && *l > 0.0));
    }
});
