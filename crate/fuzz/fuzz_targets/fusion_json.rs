#![no_main]

use domestic_ar::fusion::{verify_fusion, FusionDatum};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(d) = FusionDatum::from_json(text) {
        let _ = verify_fusion(&d);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(FusionDatum::from_json(&text).unwrap(), d);
    }
});
