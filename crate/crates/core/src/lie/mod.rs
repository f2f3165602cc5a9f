mod character;
mod duflo;
mod group;
mod spec;
mod su2;
mod weight;

pub use character::{
    alternating_sum, irreducible_character, irrep_dimension, weight_multiplicities,
    weyl_denominator,
};
pub use duflo::duflo_factor;
pub(crate) use group::dot;
pub use group::{GroupData, PositiveRoot, WeylElement};
pub use spec::{Factor, GroupSpec};
pub use su2::{spherical_harmonic, torus_representative, GroupElement, Su2};
pub use weight::{TorusElement, Weight};

/// Builds the data for a parsed group specification.
pub fn build_group_data(spec: &GroupSpec) -> crate::error::Result<GroupData> {
    GroupData::build(spec)
}
