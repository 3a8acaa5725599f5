#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| capvertex_fuzz::conventions_json(data));
