#![no_main]

use domestic_ar::cyclo::Cyclo;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(c) = serde_json::from_slice::<Cyclo>(data) {
        let text = serde_json::to_string(&c).unwrap();
        let back: Cyclo = serde_json::from_str(&text).unwrap();
        assert_eq!(back, c);
        if c.conductor() <= 256 {
            if let Some(inv) = c.inverse() {
                assert!((&c * &inv).is_one());
            }
        }
    }
});
