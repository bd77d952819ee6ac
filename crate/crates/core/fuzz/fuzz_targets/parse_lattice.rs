#![no_main]

use libfuzzer_sys::fuzz_target;
use spectile::io::{parse_lattice, to_json_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(l) = parse_lattice(text) {
        assert_eq!(parse_lattice(&to_json_string(&l)).unwrap(), l);
    }
});
