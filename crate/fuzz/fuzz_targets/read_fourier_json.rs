#![no_main]

use grouploc::fourier::FourierTableJson;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(table) = serde_json::from_slice::<FourierTableJson>(data) else { return };
    let _ = table.to_distribution();
});
