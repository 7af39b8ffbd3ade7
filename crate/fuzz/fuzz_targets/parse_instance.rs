#![no_main]

use invsemi::instance::parse_instance_str;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_instance_str(text);
    }
});
