use std::f64::consts::TAU;

use grouploc::clifford::{
    build_r_matrix, clifford_invariants, contraction_residual, torus_invariance_residual,
    verify_clif_intertwine, yang_baxter_residual,
};
use grouploc::config::{RunConfig, XiGrid};
use grouploc::fourier::{
    delta_minus, quantization_paths, restrict_invariant_density, restrict_point_mass,
    write_fourier_csv, AlgebraDensity, FourierTableJson, InvariantDensity,
};
use grouploc::lie::{GroupData, GroupElement, TorusElement, Weight};
use grouploc::localization::{
    abelian_dh_coefficient, class_character_mean, dh_coefficient, dominant_weights,
    orbit_liouville_integral, pairing_series, Cocycle, GSpaceModel, LocalizationReport, ModelSpec,
    ReportMetadata, ReportRow,
};
use grouploc::{Error, Result};
use num_complex::Complex64;

use crate::output::{emit, to_json, Check, PairingReport, VerificationReport};
use crate::VerifyTarget;

const LOCALIZE_TOL: f64 = 1e-8;
const PAIRING_TOL: f64 = 1e-4;
const PAIRING_BOX: usize = 64;
const FOURIER_BOX: usize = 16;
const QUANTIZATION_BOX: usize = 12;
const DEFAULT_LAMBDA_MAX: usize = 20;
const KERNEL_SAMPLES: usize = 100;
const KERNEL_SEED: u64 = 0x5eed;

/// 2 for configuration errors, 1 for numerical failures.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_)
        | Error::Io(_)
        | Error::UnknownCocycle(_)
        | Error::UnsupportedGroup(_)
        | Error::Unsupported(_)
        | Error::NotDominant(_)
        | Error::Mismatch(_)
        | Error::BadIndex { .. } => 2,
        _ => 1,
    }
}

fn report_violations(violations: &[String]) {
    for v in violations {
        eprintln!("violated: {v}");
    }
}

pub fn verify(target: VerifyTarget, config: &RunConfig) -> Result<bool> {
    let g = GroupData::build(&config.group)?;
    let checks = match target {
        VerifyTarget::Clifford => {
            let inv = clifford_invariants(&g, KERNEL_SAMPLES, KERNEL_SEED)?;
            vec![
                Check::new(
                    "[iota_a, d] = L_a and the Cartan commutation relations",
                    inv.cartan_relations,
                    1e-10,
                ),
                Check::new("d o d = 0", inv.differential_square, 1e-10),
                Check::new("gamma^2 = -(1/48) sum f^2", inv.gamma_square, 1e-10),
                Check::new(
                    "d = ad(gamma) expanded in y and iota",
                    inv.differential_expansion,
                    1e-10,
                ),
                Check::new("T(r) T(-r) = 1", inv.twist_inverse, 1e-10),
                Check::new(
                    "T y_a T^-1 = y_a - r_ab iota_b",
                    inv.twist_conjugation,
                    1e-10,
                ),
            ]
        }
        VerifyTarget::Rmatrix => {
            let r = build_r_matrix(&g);
            vec![
                Check::new("r antisymmetric", r.antisymmetry_residual(), 1e-10),
                Check::new(
                    "f_abc r_bc = 4 pi i rho_a",
                    contraction_residual(&g, &r),
                    1e-10,
                ),
                Check::new(
                    "modified classical Yang-Baxter equation",
                    yang_baxter_residual(&g, &r),
                    1e-10,
                ),
                Check::new(
                    "r invariant under the maximal torus",
                    torus_invariance_residual(&g, &r),
                    1e-10,
                ),
            ]
        }
        VerifyTarget::Restriction => {
            let inv = clifford_invariants(&g, KERNEL_SAMPLES, KERNEL_SEED)?;
            vec![
                Check::new(
                    "(p o T) o d = 2 pi i rho_k iota_k o (p o T)",
                    verify_clif_intertwine(&g)?,
                    1e-9,
                ),
                Check::new(
                    "(p o T)(tau(exp mu)) = exp(2 pi i <mu, rho>)",
                    inv.tau_kernel,
                    1e-9,
                ),
                Check::new(
                    "h^rho r(delta_h) = delta_h^-",
                    point_mass_residual(&g, FOURIER_BOX)?,
                    1e-12,
                ),
            ]
        }
        VerifyTarget::Quantization => {
            let box_size = config.box_size.unwrap_or(QUANTIZATION_BOX);
            let (bump, threshold) = if g.is_abelian() {
                (1.0, 1e-8)
            } else {
                (0.5, 1e-6)
            };
            let smooth = quantization_paths(
                &g,
                &AlgebraDensity::Bump { radius: bump },
                box_size,
                &config.quadrature,
            )?;
            let point =
                quantization_paths(&g, &AlgebraDensity::PointMass, box_size, &config.quadrature)?;
            vec![
                Check::new(
                    "quantization commutes with restriction (bump density)",
                    smooth.residual,
                    threshold,
                ),
                Check::new(
                    "quantization commutes with restriction (point mass)",
                    point.residual,
                    1e-12,
                ),
            ]
        }
    };
    let report = VerificationReport::new(target.name(), g.name(), checks);
    emit(config, &to_json(&report), &report.to_csv())?;
    report_violations(&report.violations);
    Ok(report.passed)
}

/// `max |h^rho r(delta_h) - delta_h^-|` over a fixed set of torus elements.
pub fn point_mass_residual(g: &GroupData, box_size: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for k in 1..=5 {
        let angles: Vec<f64> = (0..g.rank())
            .map(|i| 0.137 * k as f64 + 0.071 * i as f64)
            .collect();
        let h = TorusElement::new(angles);
        let restricted = restrict_point_mass(g, &GroupElement::Torus(h.clone()), box_size)?;
        let twisted = restricted.scale(h.pow(g.rho()));
        worst = worst.max(twisted.max_abs_diff(&delta_minus(g, &h, box_size)?)?);
    }
    Ok(worst)
}

fn metadata(config: &RunConfig, tolerance: f64) -> ReportMetadata {
    let q = &config.quadrature;
    ReportMetadata {
        group: config.group.to_string(),
        model: config.model.to_string(),
        cocycle: config.cocycle.to_string(),
        tolerance,
        quadrature: format!("{}:{}:{}:{}", q.rule, q.nodes, q.levels, q.tolerance),
    }
}

fn require_unit_cocycle(config: &RunConfig) -> Result<()> {
    if config.cocycle == Cocycle::One {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "oracle for cocycle {}",
            config.cocycle
        )))
    }
}

/// Cartan direction of a scalar grid parameter: `rho`, or the diagonal on a torus.
fn grid_direction(g: &GroupData) -> Vec<f64> {
    let rho = g.rho_vector();
    if rho.iter().any(|x| *x != 0.0) {
        rho
    } else {
        vec![1.0; g.rank()]
    }
}

fn weight_rows(config: &RunConfig, m: &GSpaceModel, lambda_max: usize) -> Result<Vec<ReportRow>> {
    let g = m.group();
    let weights: Vec<Weight> = dominant_weights(g, lambda_max);
    let base = dh_coefficient(m, &config.cocycle, &Weight::zero(g.rank()))?;
    let mut rows = Vec::with_capacity(weights.len());
    for lambda in &weights {
        let value = dh_coefficient(m, &config.cocycle, lambda)?;
        let parameter = lambda.coords.iter().map(|&c| c as f64).collect();
        let mut row = ReportRow::new(parameter, value);
        if let ModelSpec::ConjugacyClass { theta } = config.model {
            if base.norm() > 0.0 {
                row = row.with_ratio(value / base);
            }
            if config.oracle {
                require_unit_cocycle(config)?;
                row = row.with_oracle(class_character_mean(theta, lambda, &config.quadrature)?);
            }
        } else if config.oracle {
            row = row.with_oracle(Complex64::new(0.0, 0.0));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn grid_rows(config: &RunConfig, m: &GSpaceModel, grid: &XiGrid) -> Result<Vec<ReportRow>> {
    let g = m.group();
    let direction = grid_direction(g);
    let mut rows = Vec::with_capacity(grid.len());
    for xi in grid.points() {
        let vector: Vec<f64> = direction.iter().map(|d| d * xi).collect();
        let value = abelian_dh_coefficient(m, &config.cocycle, &vector)?;
        let mut row = ReportRow::new(vec![xi], value);
        if config.oracle {
            let oracle = match config.model {
                ModelSpec::Orbit { .. } => {
                    require_unit_cocycle(config)?;
                    orbit_liouville_integral(m, &vector, &config.quadrature)?
                }
                ModelSpec::TorusFree => Complex64::new(0.0, 0.0),
                ModelSpec::ConjugacyClass { .. } => {
                    return Err(Error::Unsupported(
                        "algebra-parameter oracle for a conjugacy class".into(),
                    ))
                }
            };
            row = row.with_oracle(oracle);
        }
        rows.push(row);
    }
    Ok(rows)
}

pub fn localize(config: &RunConfig) -> Result<bool> {
    let g = GroupData::build(&config.group)?;
    let m = GSpaceModel::from_spec(&g, config.model)?;
    let tolerance = config.tol.unwrap_or(LOCALIZE_TOL);
    let rows = match (config.lambda_max, &config.xi_grid) {
        (Some(_), Some(_)) => {
            return Err(Error::Parse(
                "set either lambda-max or xi-grid, not both".into(),
            ))
        }
        (Some(n), None) => weight_rows(config, &m, n)?,
        (None, Some(grid)) => grid_rows(config, &m, grid)?,
        (None, None) => match config.model {
            ModelSpec::ConjugacyClass { .. } => weight_rows(config, &m, DEFAULT_LAMBDA_MAX)?,
            _ => grid_rows(config, &m, &XiGrid::new(0.1, 5.0, 0.1)?)?,
        },
    };
    let report = LocalizationReport::new(metadata(config, tolerance), rows);
    emit(config, &report.to_json(), &report.to_csv())?;
    if !report.passed {
        report_violations(&[format!(
            "fixed-point value agrees with the oracle: max discrepancy {:.3e} exceeds {tolerance:.3e}",
            report.max_abs_diff.unwrap_or(f64::NAN)
        )]);
    }
    Ok(report.passed)
}

fn class_element(config: &RunConfig, g: &GroupData) -> Result<(Vec<f64>, TorusElement)> {
    let angles = match (&config.class, config.model) {
        (Some(a), _) => a.clone(),
        (None, ModelSpec::ConjugacyClass { theta }) => vec![theta],
        (None, _) => return Err(Error::Parse("pairing needs a class angle --C".into())),
    };
    if angles.len() != g.rank() {
        return Err(Error::Mismatch(format!(
            "{} class angles for rank {}",
            angles.len(),
            g.rank()
        )));
    }
    let element = TorusElement::new(angles.iter().map(|a| a / TAU).collect());
    Ok((angles, element))
}

pub fn pairing(config: &RunConfig) -> Result<bool> {
    let g = GroupData::build(&config.group)?;
    let m = GSpaceModel::from_spec(&g, config.model)?;
    let (angles, c) = class_element(config, &g)?;
    let box_size = config.box_size.unwrap_or(PAIRING_BOX);
    let tolerance = config.tol.unwrap_or(PAIRING_TOL);
    let series = pairing_series(
        &m,
        &config.cocycle,
        &c,
        config.sigma,
        box_size,
        tolerance,
        &config.quadrature,
    )?;
    let report = PairingReport::new(config, box_size, angles, &series);
    emit(config, &to_json(&report), &report.to_csv())?;
    report_violations(&report.violations);
    Ok(report.converged)
}

pub fn fourier(source: &str, config: &RunConfig) -> Result<bool> {
    let g = GroupData::build(&config.group)?;
    let box_size = config.box_size.unwrap_or(FOURIER_BOX);
    let table = match source {
        "point-mass" => {
            let angles = config.class.clone().unwrap_or_else(|| vec![0.0; g.rank()]);
            if angles.len() != g.rank() {
                return Err(Error::Mismatch(format!(
                    "{} angles for rank {}",
                    angles.len(),
                    g.rank()
                )));
            }
            let h = TorusElement::new(angles.iter().map(|a| a / TAU).collect());
            restrict_point_mass(&g, &GroupElement::Torus(h), box_size)?
        }
        "haar" => {
            restrict_invariant_density(&g, &InvariantDensity::haar(config.quadrature), box_size)?
        }
        other => {
            let coords = other
                .strip_prefix("character:")
                .ok_or_else(|| Error::Parse(format!("unknown fourier source '{other}'")))?;
            let nu = Weight::new(
                coords
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad weight '{coords}'")))
                    })
                    .collect::<Result<_>>()?,
            );
            g.check_dominant(&nu)?;
            restrict_invariant_density(
                &g,
                &InvariantDensity::character_weighted(nu, config.quadrature),
                box_size,
            )?
        }
    };
    let csv = write_fourier_csv(&table);
    emit(
        config,
        &to_json(&FourierTableJson::new(&g.name(), &table)),
        &csv,
    )?;
    Ok(true)
}
