#![no_main]

use libfuzzer_sys::fuzz_target;
use positroid_core::{FieldDescriptor, FieldSpec};

// Small cap so accepted fields are cheap to exercise.
const MAX_ORDER: u64 = 1 << 12;

fuzz_target!(|data: &[u8]| {
    let Ok(d) = serde_json::from_slice::<FieldDescriptor>(data) else { return };
    let Ok(f) = FieldSpec::from_descriptor(&d, MAX_ORDER) else { return };
    assert_eq!(f.descriptor(), d);
    let g = f.primitive_element();
    assert_eq!(f.multiplicative_order(g), Some(f.order() - 1));
    for x in f.nonzero_elements().take(64) {
        assert_eq!(f.mul(x, f.inv(x).expect("nonzero")), f.one());
    }
});
