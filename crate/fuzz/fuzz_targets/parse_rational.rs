#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::rational::parse_rational;

fuzz_target!(|text: &str| {
    if let Ok(r) = parse_rational(text) {
        assert_eq!(parse_rational(&r.to_string()).unwrap(), r);
    }
});
