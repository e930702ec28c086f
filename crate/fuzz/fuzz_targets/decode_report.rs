#![no_main]

use libfuzzer_sys::fuzz_target;
use positroid_core::report::{from_json, to_json};

// Decoded reports re-encode to JSON that decodes to the same reports.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(reports) = from_json(s) {
        let again = from_json(&to_json(&reports)).expect("encoder output decodes");
        assert_eq!(again, reports);
    }
});
