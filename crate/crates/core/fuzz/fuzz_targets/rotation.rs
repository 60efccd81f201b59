#![no_main]

use libfuzzer_sys::fuzz_target;
use planar_recolor::formats::{emit_rotation, parse_rotation};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = parse_rotation(text) {
        let again = parse_rotation(&emit_rotation(&g)).expect("emitted rotation re-parses");
        assert_eq!(emit_rotation(&again), emit_rotation(&g));
        assert_eq!(g.vertex_count() + g.face_count(), g.edge_count() + 2);
    }
});
