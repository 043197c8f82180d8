#![no_main]

use hamming_witness::hamming::GraphParams;
use hamming_witness::verifier::MatchingCertificate;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let [a, b, rest @ ..] = data else { return };
    let params = GraphParams::new(1 + (*a as usize % 4), 3 + (*b as u32 % 4)).unwrap();
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(cert) = MatchingCertificate::parse_text(text, &params) {
        let again = MatchingCertificate::parse_text(&cert.to_text(&params), &params).unwrap();
        assert_eq!(cert, again);
        let _ = cert.check(&params);
    }
});
