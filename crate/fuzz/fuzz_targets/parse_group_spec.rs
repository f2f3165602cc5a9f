#![no_main]

use grouploc::config::parse_group_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = parse_group_spec(text) {
        assert_eq!(parse_group_spec(&spec.to_string()).unwrap(), spec);
    }
});
