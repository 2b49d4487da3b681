#![no_main]

use domestic_ar::graph::AffineType;
use domestic_ar::groups::Family;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = text.parse::<Family>() {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
    if let Ok(t) = text.parse::<AffineType>() {
        assert_eq!(t.to_string().parse::<AffineType>().unwrap(), t);
        if t.vertex_count() <= 4096 {
            assert_eq!(t.template().len(), t.vertex_count());
        }
    }
});
