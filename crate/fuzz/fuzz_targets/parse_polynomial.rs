#![no_main]

use depthlab::{Field, MonomialOrder, PolyRing, Polynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let s = PolyRing::new(Field::Rationals, &["x", "y", "z"], MonomialOrder::Grevlex).unwrap();
    if let Ok(p) = Polynomial::parse(&s, text) {
        let q = Polynomial::parse(&s, &p.to_string()).expect("printed polynomial must parse");
        assert_eq!(p, q);
    }
});
