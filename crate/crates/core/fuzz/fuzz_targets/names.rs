#![no_main]

use libfuzzer_sys::fuzz_target;
use planar_recolor::config::{ConfigKind, Configuration, Role, Strategy};
use planar_recolor::instances::Family;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = text.parse::<Strategy>() {
        assert_eq!(s.to_string().parse::<Strategy>(), Ok(s));
    }
    if let Ok(k) = text.parse::<ConfigKind>() {
        assert_eq!(k.to_string().parse::<ConfigKind>(), Ok(k));
    }
    if let Ok(r) = text.parse::<Role>() {
        assert_eq!(r.to_string().parse::<Role>(), Ok(r));
    }
    if let Ok(c) = text.parse::<Configuration>() {
        assert_eq!(c.to_string().parse::<Configuration>().as_ref(), Ok(&c));
    }
    let _ = text.parse::<Family>();
});
