mod distribution;
mod io;
mod quantization;
mod restriction;

pub use distribution::{
    convolve, delta_minus, in_hardy_support, szego_project, FourierDistribution,
};
pub use io::{read_fourier_csv, write_fourier_csv, FourierTableJson, FOURIER_SCHEMA_VERSION};
pub use quantization::{
    quantization_paths, verify_quantization_diagram, AlgebraDensity, QuantizationPaths,
};
pub use restriction::{restrict_invariant_density, restrict_point_mass, InvariantDensity};
