mod element;
mod operator;
mod rmatrix;
mod verify;

pub use element::{
    clifford_multiply, gamma_element, quadratic_element, tau_element, Parity, SuperElement,
};
pub use operator::{
    ad_operator, build_operator, exterior_multiplication, twist_operator, OperatorKind,
    SuperOperator,
};
pub use rmatrix::{
    build_r_matrix, contraction_residual, torus_invariance_residual, yang_baxter_residual, RMatrix,
};
pub use verify::{clifford_invariants, verify_clif_intertwine, CliffordInvariants};
