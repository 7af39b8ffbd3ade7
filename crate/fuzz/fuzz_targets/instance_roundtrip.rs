#![no_main]

use invsemi::instance::{emit_instance, parse_instance_str};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Anything the parser accepts must survive emit -> parse unchanged.
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(file) = parse_instance_str(text) else {
        return;
    };
    let emitted = emit_instance(&file);
    let reparsed = parse_instance_str(&emitted)
        .expect("emitted instance parses back");
    assert_eq!(reparsed, file, "round trip changed the instance");
});
