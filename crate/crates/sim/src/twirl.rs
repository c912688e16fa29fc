//! Exact, sampled and one-gate twirling on density matrices, the predicted
//! Pauli channel, and gate-noise bracketing.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use twirl_core::{span, PauliString, TwirlPlan};

use crate::channel::{pauli_basis, NoiseChannel};
use crate::dense::{max_abs, pauli_conjugate, pauli_matrix, unitarity_residual, CMatrix};
use crate::density::DensityMatrix;
use crate::error::SimError;

const UNITARY_TOL: f64 = 1e-10;

/// `M rho M†`.
pub fn apply_kraus(op: &CMatrix, state: &CMatrix) -> Result<CMatrix, SimError> {
    if op.nrows() != op.ncols() || state.nrows() != state.ncols() || op.nrows() != state.nrows() {
        return Err(SimError::QubitMismatch {
            left: op.nrows(),
            right: state.nrows(),
        });
    }
    Ok(op * state * op.adjoint())
}

fn conjugated_branches(w_set: &[PauliString], m: &CMatrix) -> Result<Vec<CMatrix>, SimError> {
    w_set.iter().map(|w| pauli_conjugate(w, m)).collect()
}

fn check_twirl_inputs(
    w_set: &[PauliString],
    m: &CMatrix,
    rho: &DensityMatrix,
) -> Result<(), SimError> {
    if w_set.is_empty() {
        return Err(SimError::EmptyTwirlSet);
    }
    for w in w_set {
        if w.n() != rho.n() {
            return Err(SimError::QubitMismatch {
                left: w.n(),
                right: rho.n(),
            });
        }
    }
    if m.nrows() != rho.matrix().nrows() || m.ncols() != rho.matrix().ncols() {
        return Err(SimError::QubitMismatch {
            left: m.nrows(),
            right: rho.matrix().nrows(),
        });
    }
    Ok(())
}

/// Exact twirling: average the conjugated channel over the whole twirling
/// set, `(1/|W|) Σ_w (wMw) rho (wMw)†`.
pub fn exact_twirl(
    w_set: &[PauliString],
    m: &CMatrix,
    rho: &DensityMatrix,
) -> Result<DensityMatrix, SimError> {
    check_twirl_inputs(w_set, m, rho)?;
    let dim = m.nrows();
    let mut acc = CMatrix::zeros(dim, dim);
    for branch in conjugated_branches(w_set, m)? {
        acc += apply_kraus(&branch, rho.matrix())?;
    }
    acc /= Complex64::new(w_set.len() as f64, 0.0);
    DensityMatrix::new_unchecked_from(acc)
}

/// Sampled twirling: average over `samples` uniform draws from the twirling
/// set, seeded for reproducibility.
pub fn random_twirl(
    w_set: &[PauliString],
    m: &CMatrix,
    rho: &DensityMatrix,
    samples: usize,
    seed: u64,
) -> Result<DensityMatrix, SimError> {
    check_twirl_inputs(w_set, m, rho)?;
    if samples == 0 {
        return Err(SimError::NoSamples);
    }
    let applied: Vec<CMatrix> = conjugated_branches(w_set, m)?
        .iter()
        .map(|branch| apply_kraus(branch, rho.matrix()))
        .collect::<Result<_, _>>()?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let dim = m.nrows();
    let mut acc = CMatrix::zeros(dim, dim);
    for _ in 0..samples {
        acc += &applied[rng.random_range(0..w_set.len())];
    }
    acc /= Complex64::new(samples as f64, 0.0);
    DensityMatrix::new_unchecked_from(acc)
}

/// Twirling with `W = {I, w}`: decoheres the parts of `M` that commute with
/// `w` from the parts that anticommute, `(M rho M† + (wMw) rho (wMw)†) / 2`.
pub fn one_gate_twirl(
    w: &PauliString,
    m: &CMatrix,
    rho: &DensityMatrix,
) -> Result<DensityMatrix, SimError> {
    let identity = PauliString::identity(w.n()).map_err(SimError::Core)?;
    exact_twirl(&[identity, w.clone()], m, rho)
}

/// The Pauli channel a twirled noise operator becomes: error `v` with
/// probability `p_v`.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliChannel {
    n: usize,
    probs: BTreeMap<PauliString, f64>,
}

impl PauliChannel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn probability(&self, p: &PauliString) -> f64 {
        self.probs.get(p).copied().unwrap_or(0.0)
    }

    /// Entries in canonical Pauli order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &f64)> {
        self.probs.iter()
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.probs.values().sum()
    }

    /// Apply `Σ p_v v rho v` to a state.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix, SimError> {
        if self.n != rho.n() {
            return Err(SimError::QubitMismatch {
                left: self.n,
                right: rho.n(),
            });
        }
        let dim = rho.matrix().nrows();
        let mut acc = CMatrix::zeros(dim, dim);
        for (v, p) in &self.probs {
            acc += pauli_conjugate(v, rho.matrix())?.scale(*p);
        }
        DensityMatrix::new_unchecked_from(acc)
    }
}

/// The Pauli channel predicted for the twirled noise: each branch is
/// normalised to unit Frobenius mass, so `p_v = Σ_b weight_b |tr(v M_b)|² /
/// 2^(2n)` sums to one over the branch weights.
pub fn predicted_channel(
    channel: &NoiseChannel,
    threshold: f64,
) -> Result<PauliChannel, SimError> {
    let weights = channel.branch_weights();
    let mut probs: BTreeMap<PauliString, f64> = BTreeMap::new();
    for (op, weight) in channel.operators().iter().zip(weights) {
        let sum = op.to_pauli_sum()?.normalized();
        for (v, c) in sum.iter() {
            *probs.entry(v.clone()).or_insert(0.0) += weight * c.norm_sqr();
        }
    }
    probs.retain(|_, p| *p > threshold);
    Ok(PauliChannel {
        n: channel.n(),
        probs,
    })
}

/// Simulate a noisy gate bracketed by twirling gates: for each `w` in the
/// span of the generators the circuit applies `C† w C`, then the gate `C`,
/// then the noise `M` with probability `p`, then `w`. The average is the
/// gate followed by the twirled noise.
pub fn gate_noise_twirl(
    gate: &CMatrix,
    m: &CMatrix,
    p: f64,
    w_tilde: &[PauliString],
    rho: &DensityMatrix,
) -> Result<DensityMatrix, SimError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(SimError::InvalidProbability { value: p });
    }
    let residual = unitarity_residual(gate);
    if residual > UNITARY_TOL {
        return Err(SimError::NotUnitary { residual });
    }
    if gate.nrows() != rho.matrix().nrows() || m.nrows() != rho.matrix().nrows() {
        return Err(SimError::QubitMismatch {
            left: gate.nrows(),
            right: rho.matrix().nrows(),
        });
    }
    let w_set = span(rho.n(), w_tilde).map_err(SimError::Core)?;
    let dim = gate.nrows();
    let mut acc = CMatrix::zeros(dim, dim);
    for w in &w_set {
        let w_mat = pauli_matrix(w)?;
        let pre = gate.adjoint() * &w_mat * gate;
        let bracketed_gate = &w_mat * gate * &pre;
        let bracketed_noisy = &w_mat * m * gate * &pre;
        acc += apply_kraus(&bracketed_gate, rho.matrix())?.scale(1.0 - p);
        acc += apply_kraus(&bracketed_noisy, rho.matrix())?.scale(p);
    }
    acc /= Complex64::new(w_set.len() as f64, 0.0);
    DensityMatrix::new_unchecked_from(acc)
}

/// Run the construction pipeline on a channel: extract the Pauli basis, then
/// build the twirling plan from it.
pub fn build_twirl_plan(channel: &NoiseChannel, threshold: f64) -> Result<TwirlPlan, SimError> {
    let basis = pauli_basis(channel, threshold)?;
    TwirlPlan::from_basis(&basis).map_err(SimError::Core)
}

/// Convenience check used by tests and reports: largest deviation between an
/// exactly twirled state and the predicted Pauli channel's action.
pub fn twirl_prediction_residual(
    w_set: &[PauliString],
    m: &CMatrix,
    predicted: &PauliChannel,
    rho: &DensityMatrix,
) -> Result<f64, SimError> {
    let twirled = exact_twirl(w_set, m, rho)?;
    let expected = predicted.apply(rho)?;
    Ok(max_abs(&(twirled.matrix() - expected.matrix())))
}
