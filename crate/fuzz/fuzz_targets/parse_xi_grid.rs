#![no_main]

use grouploc::config::parse_xi_grid;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(grid) = parse_xi_grid(text) {
        assert_eq!(parse_xi_grid(&grid.to_string()).unwrap(), grid);
        assert_eq!(grid.points().len(), grid.len());
    }
});
