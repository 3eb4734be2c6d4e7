#![no_main]

use libfuzzer_sys::fuzz_target;
use regge_core::parse::parse_edges;
use regge_core::regge::{self, Tolerances};
use regge_core::{tetra, Geometry};

// Any accepted input either yields a report or a typed error, never a panic.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(e) = parse_edges(s) else { return };
    for g in Geometry::ALL {
        if let Ok(t) = tetra::validate(g, &e) {
            let _ = regge::verify_regge(&t, Tolerances::default_for(g));
        }
    }
});
