#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::renorm::RenormKind;

fuzz_target!(|text: &str| {
    if let Ok(kind) = text.parse::<RenormKind>() {
        assert_eq!(kind.to_string().parse::<RenormKind>().unwrap(), kind);
    }
});
