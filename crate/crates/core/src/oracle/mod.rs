//! Brute-force double-precision verifier.
//!
//! Everything here works on explicit `2^N` amplitude vectors and is written
//! without reference to the exact-rational bound code, so an agreement between
//! the two is a genuine cross-check.

pub mod bounds;
pub mod channels;
pub mod density;
pub mod enumeration;
pub mod identities;
pub mod linalg;
pub mod state;

pub use bounds::{commutator_bound, commutator_routes, commutator_trace_norm, exact_qfi, CommutatorRoutes};
pub use channels::{apply_iid_dephasing, apply_single_error_dephasing, iid_dephasing_dense, IidDephasing};
pub use density::{partial_trace, partial_trace_mixture, reconstruct_partial_trace, OracleDensity, PureMixture};
pub use enumeration::{dicke_pauli_brute, enumerate_z_sums, z_string_expectations};
pub use identities::{hermitian_identity_check, random_hermitian, IdentityReport};
pub use state::{build_state, generator_diagonal, OracleState};
