#![no_main]

use libfuzzer_sys::fuzz_target;
use spectile::fourier::GridFunction;

fuzz_target!(|data: &[u8]| {
    if let Ok(g) = GridFunction::<f64>::read_csv(data) {
        let mut out = Vec::new();
        g.write_csv(&mut out).unwrap();
    }
});
