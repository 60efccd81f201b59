#![no_main]

use libfuzzer_sys::fuzz_target;
use planar_recolor::formats::{emit_coloring, parse_coloring};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_coloring(text) {
        assert_eq!(
            parse_coloring(&emit_coloring(&c)).expect("emitted coloring re-parses"),
            c
        );
    }
});
