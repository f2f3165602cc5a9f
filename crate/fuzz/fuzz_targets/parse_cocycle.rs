#![no_main]

use grouploc::localization::Cocycle;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cocycle) = text.parse::<Cocycle>() {
        assert_eq!(cocycle.to_string().parse::<Cocycle>().unwrap().to_string(), cocycle.to_string());
    }
});
