//! Turán-type reduction of weighted graphs to vertex-weighted quotients, and
//! the exact minimisation of `phi(Q)` over the simplex.

pub mod weighted;

pub use weighted::WeightedCompleteGraph;
pub mod quotient;
pub mod reduce;
pub mod simplex;

pub use quotient::{phi_weight, quotient, VertexWeightedGraph};
pub use reduce::{collapse_weights, complete_ize, dangerous_triples, normalize_partition, ReductionTrace};
pub use simplex::{minimize_phi, PhiMinimum};
pub mod verify;

pub use verify::{
    k5_family, verify_claim_s8, verify_clique_partition_bound, verify_observations, verify_prop_quarter,
    VerificationReport,
};
