#![no_main]

use libfuzzer_sys::fuzz_target;
use magoglab::serial::{parse, serialize};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(obj) = parse(text) {
        let canonical = serialize(&obj);
        let again = parse(&canonical).expect("canonical output parses");
        assert_eq!(serialize(&again), canonical);
    }
});
