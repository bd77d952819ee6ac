#![no_main]

use libfuzzer_sys::fuzz_target;
use spectile::io::{parse_polytope, to_json_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(p) = parse_polytope(text) {
        let again = parse_polytope(&to_json_string(&p)).unwrap();
        assert!(again.same_body(&p));
    }
});
