#![no_main]

use hamming_witness::edges::EdgeList;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|src: &str| {
    let Ok(list) = EdgeList::parse(src) else { return };
    let mut out = Vec::new();
    list.write(&mut out, Some("round trip")).unwrap();
    let again = EdgeList::parse(std::str::from_utf8(&out).unwrap()).unwrap();
    assert_eq!(list, again);
});
