#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::spaces::{norm, SpaceSpec, SparseVector};

fuzz_target!(|data: &[u8]| {
    let Ok(x) = serde_json::from_slice::<SparseVector>(data) else { return };
    if x.len() > 12 {
        return;
    }
    let t: SpaceSpec = "T".parse().unwrap();
    let n = norm(&x, &t);
    assert!(x.linf() <= n && n <= x.l1());
});
