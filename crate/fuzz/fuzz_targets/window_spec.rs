#![no_main]

use domestic_ar_cli::parse_window;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((lo, hi)) = parse_window(text) {
        assert!(lo <= hi);
        assert_eq!(parse_window(&format!("{lo}:{hi}")).unwrap(), (lo, hi));
    }
});
