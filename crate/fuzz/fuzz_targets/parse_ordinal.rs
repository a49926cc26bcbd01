#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::Ordinal;

fuzz_target!(|text: &str| {
    if let Ok(a) = text.parse::<Ordinal>() {
        let back: Ordinal = a.to_string().parse().expect("display parses");
        assert_eq!(back, a);
    }
});
