//! Exact simulation of the one non-clean qubit model, a DQC1 computer whose
//! probed qubit has polarization `eps`, together with the error analysis and
//! reduction arithmetic that go with it.
//!
//! Qubit 0 is the polarized qubit and the most significant bit of every basis
//! index throughout the crate.

pub mod circuit;
pub mod corpus;
pub mod error;
pub mod error_analysis;
pub mod io;
pub mod model;
pub mod oracle;
pub mod random;
pub mod reductions;
pub mod sampling;
pub mod state;
pub mod sweep;

pub use circuit::{parse_circuit, Circuit, Gate, GateKind};
pub use error::{Error, Result};
pub use error_analysis::{
    adversarial_circuit, marginal_error_check, multiplicative_error, uniform_check, ErrorReport,
};
pub use model::{
    clean_qubit_required_epsilon, exact_distribution, exact_distribution_capped,
    marginal_first_qubit, Distribution, Polarization,
};
pub use oracle::oracle_distribution;
pub use random::{gen_random_circuit, GateMix};
pub use sampling::{sample, ShotRecord};
pub use state::{apply_circuit, StateVector};
