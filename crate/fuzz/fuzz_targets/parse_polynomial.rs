#![no_main]

use libfuzzer_sys::fuzz_target;
use positroid_core::IntPolynomial;

// Anything that parses must print back to a string that parses to the same value.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<IntPolynomial>() {
        let again: IntPolynomial = p.to_string().parse().expect("display output parses");
        assert_eq!(again, p);
    }
});
