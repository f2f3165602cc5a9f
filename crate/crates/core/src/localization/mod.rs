mod cocycle;
mod formulas;
mod model;
mod oracle;
mod pairing;
mod report;

pub use cocycle::Cocycle;
pub use formulas::{
    abelian_dh_coefficient, abelian_localize, dh_coefficient, euler_inverse, group_localize_fourier,
};
pub use model::{ComponentKind, FixedComponent, GSpaceModel, ModelSpec, MomentValue, Parameter};
pub use oracle::{class_character_mean, orbit_liouville_integral};
pub use pairing::{
    class_volume, dominant_weights, group_volume, intersection_pairing, pairing_series,
    PairingSeries,
};
pub use report::{LocalizationReport, ReportMetadata, ReportRow, REPORT_SCHEMA_VERSION};
