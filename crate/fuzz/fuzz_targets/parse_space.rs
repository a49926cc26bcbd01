#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::spaces::SpaceSpec;

fuzz_target!(|text: &str| {
    if let Ok(space) = text.parse::<SpaceSpec>() {
        let back: SpaceSpec = space.to_string().parse().expect("display parses");
        assert_eq!(back, space);
    }
});
