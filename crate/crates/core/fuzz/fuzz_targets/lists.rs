#![no_main]

use libfuzzer_sys::fuzz_target;
use planar_recolor::formats::{emit_lists, parse_lists};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(l) = parse_lists(text) {
        assert_eq!(
            parse_lists(&emit_lists(&l)).expect("emitted lists re-parse"),
            l
        );
    }
});
