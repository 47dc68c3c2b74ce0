//! Tripartite quantum discord of three-qubit states.
//!
//! Classically the three information-diagram expressions of the
//! trivariate mutual information coincide. Their quantum versions do not:
//! `I(A;B;C)` uses only von Neumann entropies, while `J_k(A;B;C)` uses
//! conditional entropies after local projective measurements on the two
//! subsystems other than `k`. The tripartite discord `delta_k` is the
//! minimum over those measurements of `I - J_k`, and may be negative.
//!
//! ```
//! use tripartite_discord::{states, tripartite_discord, OptimizerConfig, Subsystem};
//!
//! let r = tripartite_discord(&states::ghz(), Subsystem::A, &OptimizerConfig::default()).unwrap();
//! assert!((r.value + 1.0).abs() < 1e-6);
//! ```

pub mod classical_info;
pub mod discord;
pub mod entropy;
pub mod error;
pub mod linalg;
pub mod optimize;
pub mod states;
pub mod witness;

pub use discord::{
    bipartite_discord, discord_landscape, fixed_basis_discord, tripartite_discord, DiscordResult,
    Landscape, OptimizerConfig,
};
pub use error::{DensityViolation, Error, Result};
pub use linalg::ComplexMatrix;
pub use states::{
    make_state, DensityOperator, MeasurementBasis, StateKind, StateSpec, Subsystem, WernerFamily,
};
pub use witness::{
    boundary_discord, werner_boundary, witness_value, Boundary, WitnessKind, WitnessSpec,
};
