#![no_main]

use libfuzzer_sys::fuzz_target;
use planar_recolor::formats::{emit_graph, parse_graph};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_graph(text) {
        assert_eq!(
            parse_graph(&emit_graph(&g)).expect("emitted graph re-parses"),
            g
        );
    }
});
