#![no_main]

use libfuzzer_sys::fuzz_target;
use spectile::io::{parse_points, parse_spectrum};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = parse_spectrum(text);
    let _ = parse_points(text);
});
