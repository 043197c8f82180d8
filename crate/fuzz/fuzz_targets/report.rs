#![no_main]

use hamming_witness::report::{format_histogram, parse_histogram, Document};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|src: &str| {
    if let Ok(doc) = Document::parse(src) {
        assert_eq!(Document::parse(&doc.to_text()).unwrap(), doc);
        let _ = doc.to_json();
    }
    if let Ok(histogram) = parse_histogram(src) {
        assert_eq!(parse_histogram(&format_histogram(&histogram)).unwrap(), histogram);
    }
});
