#![no_main]

use libfuzzer_sys::fuzz_target;
use magoglab::golden::{parse_golden, parse_polynomial};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_golden(text);
    if let Ok(p) = parse_polynomial(text) {
        assert_eq!(parse_polynomial(&p.to_string()).expect("printed polynomial parses"), p);
    }
});
