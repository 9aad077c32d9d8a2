//! Exact construction and verification of regular Lauricella bi-flat F-manifolds.

pub mod connection;
pub mod dual;
pub mod error;
pub mod hierarchy;
pub mod jordan;
pub mod kernel;
pub mod sweep;
pub mod tsarev;
pub mod verifier;

pub use error::{Error, Result};
pub use jordan::{
    a0_poly, canonical_fields, is_regular, operator_l, regularity_defect, structure_constants, BlockConfig,
    CanonicalFields, ChartPoint, Tensor3,
};
pub use kernel::{Jet1, Jet2, Poly, Rational, Scalar};
pub use connection::{
    gamma_entry, gamma_seed, gamma_semisimple_oracle, gamma_single_block_oracle, gamma_smalldim_oracle, gamma_table,
    ChristoffelTable, LauricellaConnection, TableEntry,
};
pub use dual::{dual_gamma_closed, dual_gamma_generic, dual_product, dual_table, euler_inverse, nabla_euler};
pub use hierarchy::{
    epsilon_system, flows_are_symmetries, hierarchy_generate, kodama_konopelchenko, nijenhuis_torsion, d_l_function, d_l_oneform,
    FlowSequence, PolyMatrix,
};
pub use verifier::{axiom_suite, axiom_suite_with, curvature, d_nabla, full_suite, identity_suite, CheckOutcome, Tally, VerificationReport, Witness};
pub use tsarev::{candidate_residuals, residuals as tsarev_residuals, tsarev_symbol, DiagonalSystem};
pub use sweep::{compositions, sweep, SweepOptions, SweepSummary};
