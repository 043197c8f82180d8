#![no_main]

use hamming_witness::SetSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|src: &str| {
    if let Ok(spec) = src.parse::<SetSpec>() {
        let again: SetSpec = spec.to_string().parse().unwrap();
        assert_eq!(spec, again);
    }
});
