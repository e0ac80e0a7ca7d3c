//! Replays the checked-in fuzz seeds through the same entry points the fuzz
//! targets exercise.

use std::fs;
use std::path::Path;

use magoglab::btp::{btp_contains, btp_decompose};
use magoglab::golden::{parse_golden, parse_polynomial};
use magoglab::rational::{format_rational, parse_rational};
use magoglab::serial::{parse, serialize, SerializedObject};

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fuzz/corpus").join(target);
    let mut out: Vec<String> = fs::read_dir(dir).unwrap().map(|e| fs::read_to_string(e.unwrap().path()).unwrap()).collect();
    out.sort();
    assert!(!out.is_empty());
    out
}

#[test]
fn serialized_object_seeds_round_trip() {
    for s in seeds("serialized_object") {
        let obj = parse(&s).unwrap();
        assert_eq!(serialize(&parse(&serialize(&obj)).unwrap()), serialize(&obj));
    }
}

#[test]
fn rational_seeds_round_trip() {
    for s in seeds("rational") {
        let r = parse_rational(&s).unwrap();
        assert_eq!(parse_rational(&format_rational(&r)).unwrap(), r);
    }
}

#[test]
fn golden_seeds_parse() {
    for s in seeds("golden") {
        if s.contains('=') {
            assert!(!parse_golden(&s).unwrap().is_empty());
        } else {
            let p = parse_polynomial(&s).unwrap();
            assert_eq!(parse_polynomial(&p.to_string()).unwrap(), p);
        }
    }
}

#[test]
fn decomposition_seeds() {
    for s in seeds("decomposition") {
        match parse(&s).unwrap() {
            SerializedObject::RationalTriangle(p) => {
                assert!(btp_contains(&p).is_valid());
                assert!(btp_decompose(&p).unwrap().reproduces(p.entries()));
            }
            SerializedObject::Decomposition(terms) => assert_eq!(terms.len(), 2),
            other => panic!("unexpected seed {other:?}"),
        }
    }
}
