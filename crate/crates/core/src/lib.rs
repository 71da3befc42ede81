//! Vector model of quantum angular momentum built from spin-1/2 particles.
//!
//! The crate constructs spin operators and coupled `|j, m>` states of
//! spin-1/2 registers, then splits each angular momentum component into a
//! projection part and a fluctuation part. Summing the per-particle
//! fluctuations with their pair correlations reproduces `<J^2> = j(j+1)`;
//! the extra `j` in `j(j+1)` is the transverse noise.
//!
//! All angular momenta are in units of ħ. Sites are numbered from 1, and
//! basis index bit patterns put site 1 in the most significant bit with
//! bit 0 meaning spin up.
//!
//! Modules, from the bottom up:
//!
//! - [`linalg`]: dense complex matrices and state vectors
//! - [`spin_ops`]: `S_x`, `S_y`, `S_z`, `S_±` for a single spin j
//! - [`composite`]: site operators and total spin of N spin-1/2
//! - [`coupling`]: coupled eigenstates and Clebsch-Gordan coefficients
//! - [`analysis`]: variances, pair correlations, vector-model reports
//! - [`sampler`]: Monte Carlo measurement as an independent check
//!
//! With the default `parallel` feature, streaming operator application and
//! sampling run on rayon; results are identical to the sequential build.

pub mod analysis;
pub mod composite;
pub mod coupling;
mod error;
pub mod linalg;
pub mod par;
pub mod sampler;
pub mod spin_ops;

pub use analysis::{
    classify_component, effective_unit, noise_budget, pair_correlation, single_spin_report, variance, vector_choice_a,
    vector_choice_b, vector_sum_report, ComponentKind, CorrelationClass, NoiseBudget, SingleSpinReport,
    VectorModelReport,
};
pub use composite::{apply_site, embed, total_component, total_j_squared, SpinSystem};
pub use coupling::{cg_coefficient, coupled_state, lower, stretched_state, two_spin_state, CoupledState};
pub use error::{Error, Result};
pub use linalg::{expectation, kron, matvec, ComplexMatrix, StateVector};
pub use sampler::{estimate_moments, rotate_to_axis_basis, sample, SampleBatch};
pub use spin_ops::{build_ladder, build_sx, build_sy, build_sz, Axis, Ladder, SpinQuantumNumber};
