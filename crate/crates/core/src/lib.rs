//! Probability-fidelity tradeoffs for probabilistic transformations of
//! qubit state pairs and for probabilistic inversion of contractions.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod choi;
pub mod error;
pub mod inversion;
pub mod linalg;
pub mod oracle;
pub mod qstate;
pub mod tradeoff;
pub mod transform;

pub use error::{Error, Result};
pub use inversion::{
    admissible_set_floor, contracted_pair, quantum_inversion_frontier, semiclassical_fidelity,
    semiclassical_frontier, semiclassical_infidelity, semiclassical_probability, worst_case_input,
    Contraction, DiagonalState,
};
pub use linalg::{Mat2, C64};
pub use oracle::{OracleReport, SearchConfig};
pub use qstate::{
    apply_operation, bloch_fidelity, bloch_from_density, density_from_bloch, pure_overlap,
    pure_state_fidelity, uhlmann_fidelity, BlochVector, DensityMatrix, Outcome, PureQubit,
    QuantumOperation,
};
pub use tradeoff::{
    anchor_points, frontier_curve, tradeoff_fidelity, worst_case_merit, xi_pair, CurveParams,
    TradeoffCurve, TradeoffPoint,
};
pub use transform::{
    build_balanced_kraus, max_feasible_probability_constructive, max_probability_mixed,
    max_probability_pure, symmetrize_operation, symmetry_axis, symmetry_operator, StatePair,
};
