#![no_main]

use libfuzzer_sys::fuzz_target;
use spectile::io::{parse_box, parse_f64_list, parse_probes, parse_rational_list};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_rational_list(text);
    let _ = parse_f64_list(text);
    for dim in 1..=3 {
        let _ = parse_box(text, dim);
        let _ = parse_probes(text, dim);
    }
});
