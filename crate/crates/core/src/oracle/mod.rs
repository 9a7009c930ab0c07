//! Brute-force verifiers for the closed forms: a steady-state linear solve
//! on a finite chain and a time-domain wave-packet propagation.

pub mod chain;
pub mod propagate;
pub mod tridiag;

pub use chain::{
    carrier_to_detuning, finite_chain_solve, solve_sites, EmitterAttachment, FiniteChainProblem,
};
pub use propagate::{
    propagate_packet, PropagationConfig, PropagationResult, PropagationState, SpatialPacket,
    TrajectorySample,
};
