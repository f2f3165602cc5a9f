#![no_main]

use grouploc::config::parse_model_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(model) = parse_model_spec(text) {
        assert_eq!(parse_model_spec(&model.to_string()).unwrap(), model);
    }
});
