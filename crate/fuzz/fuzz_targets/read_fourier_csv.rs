#![no_main]

use grouploc::fourier::{read_fourier_csv, write_fourier_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(table) = read_fourier_csv(text) {
        assert_eq!(read_fourier_csv(&write_fourier_csv(&table)).unwrap(), table);
    }
});
