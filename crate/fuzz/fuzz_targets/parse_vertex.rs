#![no_main]

use hamming_witness::hamming::{format_vertex, parse_vertex, rank, unrank, GraphParams};
use libfuzzer_sys::fuzz_target;

// byte 0 picks n, byte 1 picks k, the rest is the vertex text
fuzz_target!(|data: &[u8]| {
    let [a, b, rest @ ..] = data else { return };
    let params = GraphParams::new(1 + (*a as usize % 8), 2 + (*b as u32 % 19)).unwrap();
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(v) = parse_vertex(text, &params) {
        assert_eq!(parse_vertex(&format_vertex(&v, &params), &params).unwrap(), v);
        let r = rank(&v, &params).unwrap();
        assert_eq!(unrank(r, &params).unwrap(), v);
    }
});
