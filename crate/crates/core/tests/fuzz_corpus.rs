//! Replays the checked-in fuzz corpus through the same round-trip checks
//! as the fuzz targets.

use std::path::Path;

use grouploc::config::{parse_group_spec, parse_model_spec, parse_run_config, parse_xi_grid};
use grouploc::fourier::{read_fourier_csv, write_fourier_csv, FourierTableJson};
use grouploc::localization::Cocycle;

fn seeds(target: &str) -> Vec<String> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut paths: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| e.unwrap().path())
        .collect();
    paths.sort();
    assert!(!paths.is_empty(), "no seeds for {target}");
    paths
        .iter()
        .map(|p| std::fs::read_to_string(p).unwrap())
        .collect()
}

#[test]
fn group_spec_seeds() {
    for s in seeds("parse_group_spec") {
        if let Ok(spec) = parse_group_spec(&s) {
            assert_eq!(parse_group_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}

#[test]
fn model_spec_seeds() {
    for s in seeds("parse_model_spec") {
        if let Ok(model) = parse_model_spec(&s) {
            assert_eq!(parse_model_spec(&model.to_string()).unwrap(), model);
        }
    }
}

#[test]
fn xi_grid_seeds() {
    let mut accepted = 0;
    for s in seeds("parse_xi_grid") {
        if let Ok(grid) = parse_xi_grid(&s) {
            accepted += 1;
            assert_eq!(parse_xi_grid(&grid.to_string()).unwrap(), grid);
            assert_eq!(grid.points().len(), grid.len());
        }
    }
    assert_eq!(accepted, 2);
}

#[test]
fn run_config_seeds() {
    let mut accepted = 0;
    for s in seeds("parse_run_config") {
        if let Ok(config) = parse_run_config(&s) {
            accepted += 1;
            let normalized = config.normalized();
            assert_eq!(parse_run_config(&normalized).unwrap(), config);
        }
    }
    assert_eq!(accepted, 2);
}

#[test]
fn cocycle_seeds() {
    for s in seeds("parse_cocycle") {
        if let Ok(c) = s.parse::<Cocycle>() {
            assert_eq!(c.to_string().parse::<Cocycle>().unwrap(), c);
        }
    }
}

#[test]
fn fourier_csv_seeds() {
    let mut accepted = 0;
    for s in seeds("read_fourier_csv") {
        if let Ok(table) = read_fourier_csv(&s) {
            accepted += 1;
            assert_eq!(read_fourier_csv(&write_fourier_csv(&table)).unwrap(), table);
        }
    }
    assert_eq!(accepted, 2);
}

#[test]
fn fourier_json_seeds() {
    let results: Vec<bool> = seeds("read_fourier_json")
        .iter()
        .map(|s| {
            let table: FourierTableJson = serde_json::from_str(s).unwrap();
            table.to_distribution().is_ok()
        })
        .collect();
    assert_eq!(results, vec![false, true]);
}
