#![no_main]

use libfuzzer_sys::fuzz_target;
use magoglab::btp::{btp_contains, btp_decompose};
use magoglab::serial::{parse, SerializedObject};

// Parsed rational triangles small enough to decompose quickly are pushed
// through the decomposition, which checks its own result.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(obj) = parse(text) else { return };
    match obj {
        SerializedObject::RationalTriangle(p) if p.order() <= 5 && btp_contains(&p).is_valid() => {
            let d = btp_decompose(&p).expect("members decompose");
            assert!(d.reproduces(p.entries()));
        }
        SerializedObject::Decomposition(terms) => {
            let _ = terms.len();
        }
        _ => {}
    }
});
