#![no_main]

use libfuzzer_sys::fuzz_target;
use positroid_core::sweep::{parse_int_set, MAX_SET_SIZE};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_int_set(s) {
        assert!(v.len() as u64 <= MAX_SET_SIZE);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
});
