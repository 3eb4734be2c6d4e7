#![no_main]

use libfuzzer_sys::fuzz_target;
use regge_core::Geometry;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = s.parse::<Geometry>() {
        // the display name parses back to the same geometry
        assert_eq!(g.to_string().parse::<Geometry>().ok(), Some(g));
    }
});
