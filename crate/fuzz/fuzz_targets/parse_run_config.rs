#![no_main]

use grouploc::config::parse_run_config;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(config) = parse_run_config(text) {
        let normalized = config.normalized();
        let again = parse_run_config(&normalized).unwrap();
        assert_eq!(again.normalized(), normalized);
    }
});
