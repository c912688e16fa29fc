//! Brute-force verification oracles for Pauli twirling at desk scale.
//!
//! `twirl-core` constructs twirling sets with exact GF(2) arithmetic; this
//! crate checks them the slow, honest way: dense complex matrices. It carries
//! the noise-channel model (Pauli-sum and dense Kraus operators), density
//! matrices, exact and sampled twirling, the predicted Pauli channel, the
//! process-matrix diagonality check, stabiliser-check channels and gate-noise
//! bracketing.
//!
//! Dense arithmetic scales as `4^n`, so every entry point enforces a qubit
//! cap: operators up to [`DENSE_QUBIT_LIMIT`], state-level twirls up to
//! [`STATE_QUBIT_LIMIT`], process matrices up to [`CHOI_QUBIT_LIMIT`].

mod channel;
mod choi;
mod dense;
mod density;
mod error;
mod report;
mod stabiliser;
mod twirl;

pub use channel::{
    decompose, pauli_basis, reconstruct, DenseOperator, KrausOperator, NoiseChannel, PauliSum,
};
pub use choi::{choi_of_channel, choi_of_twirled, is_pauli_channel, ChoiMatrix};
pub use dense::{
    pauli_conjugate, pauli_matrix, trace_with_pauli, CMatrix, CHOI_QUBIT_LIMIT,
    DENSE_QUBIT_LIMIT, STATE_QUBIT_LIMIT,
};
pub use density::{random_density, DensityMatrix};
pub use error::SimError;
pub use report::{run_standard_checks, CheckResult, VerificationReport, VerifyConfig};
pub use stabiliser::stabiliser_check_channel;
pub use twirl::{
    apply_kraus, build_twirl_plan, exact_twirl, gate_noise_twirl, one_gate_twirl,
    predicted_channel, random_twirl, twirl_prediction_residual, PauliChannel,
};
