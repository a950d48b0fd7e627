//! Two-level pseudo-Hermitian spin systems.
//!
//! The crate links a spin in a complex field `F` (non-Hermitian Hamiltonian
//! `H_F = (1/2) sigma.F`) with a spin in a real field `B` through a complex
//! orthogonal rotation, builds the unique isometry and metric selected by the
//! canonical limit, evolves states under both inner products, and exposes the
//! classical correspondence (damped precession, Landau-Lifshitz-Gilbert, spin
//! torque). The [`rabi`] module applies all of it to the damped Rabi problem
//! and its damping-suppression conditions, and [`grassmann`] checks the
//! pseudoclassical layer exactly on the Grassmann algebra G3.

pub mod dynamics;
pub mod error;
pub mod grassmann;
pub mod linalg;
pub mod pseudoherm;
pub mod rabi;

pub use error::{Error, Result};
pub use linalg::{
    evolve_operator, field_square, hamiltonian_from_field, inner, spectrum, ComplexVector3, Metric,
    Operator2, SpinState, Spinor, Vec3, C64,
};
pub use pseudoherm::{
    build_isometry, canonical_limit_field, canonical_rotation, eigenpairs_complex, eta_adjoint,
    is_pseudo_hermitian, MetricPair, Rotation3C,
};
pub use dynamics::{BlochVector, TimeGrid, Trajectory, TrajectorySample};
pub use grassmann::{CanonicalMap, GrassmannElement};
pub use rabi::{PseudoHermitianRabi, RabiParameters, Regime};
