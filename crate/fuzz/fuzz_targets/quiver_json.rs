#![no_main]

use domestic_ar::quiver::Quiver;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(q) = Quiver::from_json(text) {
        let again = Quiver::from_json(&q.to_json()).expect("exported quiver re-imports");
        assert_eq!(again.to_json(), q.to_json());
    }
});
