#![no_main]

use libfuzzer_sys::fuzz_target;
use sbl::spaces::{check_certificate, norm, CertNode, SpaceSpec, SparseVector};

// A certificate the checker accepts never claims more than the norm.
fuzz_target!(|data: &[u8]| {
    let Ok(cert) = serde_json::from_slice::<CertNode>(data) else { return };
    let space: SpaceSpec = "mixed:3/4:1/2".parse().unwrap();
    let x: SparseVector = serde_json::from_str(r#"[[2,"1"],[3,"-1/2"],[5,"2"],[6,"1"],[9,"-3"]]"#).unwrap();
    if let Ok(v) = check_certificate(&x, &space, &cert) {
        assert!(v <= norm(&x, &space));
    }
});
