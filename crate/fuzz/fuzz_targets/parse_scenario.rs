#![no_main]

use depthlab::dsl::{parse_scenario, print_scenario};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(s) = parse_scenario(text) {
        let printed = print_scenario(&s);
        let again = parse_scenario(&printed).expect("printed scenario must parse");
        assert_eq!(print_scenario(&again), printed);
    }
});
