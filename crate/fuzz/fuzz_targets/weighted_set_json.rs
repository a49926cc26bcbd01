#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::averages::{verify_average, WeightedSet};
use sbl::rational::int;
use sbl::Ordinal;

fuzz_target!(|data: &[u8]| {
    let Ok(ws) = serde_json::from_slice::<WeightedSet>(data) else { return };
    if ws.len() > 64 {
        return;
    }
    let mut last = ws.max_weight();
    assert_eq!(verify_average(&ws, &Ordinal::nat(0)), last);
    for k in 1..=2 {
        let m = verify_average(&ws, &Ordinal::nat(k));
        assert!(last <= m && m <= int(1));
        last = m;
    }
});
