//! Group-valued equivariant localization at desk scale: root data for SU(2),
//! SU(3) and tori, a Clifford-algebra operator engine, Fourier coefficient
//! tables on the maximal torus, fixed-point formulas, and brute-force
//! integration oracles to check them against.

pub mod clifford;
pub mod config;
pub mod error;
pub mod fourier;
pub mod lie;
pub mod localization;
pub mod oracle;

pub use error::{Error, Result};
