//! Process matrices in the Pauli basis and the Pauli-channel test.
//!
//! A channel `rho -> Σ K rho K†` expands over the Pauli basis as
//! `Σ_{g,g'} chi_{gg'} g rho g'` with `chi = Σ_K c(K) c(K)†`, where `c(K)`
//! is the Pauli coefficient vector of `K`. The channel is a Pauli channel
//! exactly when `chi` is diagonal; the diagonal then holds the error
//! probabilities.

use nalgebra::DVector;
use num_complex::Complex64;
use twirl_core::PauliString;

use crate::channel::{all_paulis, NoiseChannel};
use crate::dense::{check_dense_limit, hermitian_residual, CMatrix, CHOI_QUBIT_LIMIT};
use crate::error::SimError;

/// A channel's `4^n x 4^n` process matrix over the canonical Pauli basis.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    n: usize,
    basis: Vec<PauliString>,
    matrix: CMatrix,
}

impl ChoiMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// The canonical Pauli basis indexing the rows and columns.
    pub fn basis(&self) -> &[PauliString] {
        &self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn entry(&self, row: &PauliString, col: &PauliString) -> Option<Complex64> {
        let r = self.basis.iter().position(|p| p == row)?;
        let c = self.basis.iter().position(|p| p == col)?;
        Some(self.matrix[(r, c)])
    }

    /// Largest off-diagonal magnitude.
    pub fn off_diagonal_max(&self) -> f64 {
        let dim = self.matrix.nrows();
        let mut max = 0.0f64;
        for r in 0..dim {
            for c in 0..dim {
                if r != c {
                    max = max.max(self.matrix[(r, c)].norm());
                }
            }
        }
        max
    }

    /// The diagonal, paired with its basis Paulis.
    pub fn diagonal(&self) -> Vec<(PauliString, f64)> {
        (0..self.matrix.nrows())
            .map(|k| (self.basis[k].clone(), self.matrix[(k, k)].re))
            .collect()
    }

    pub fn hermitian_residual(&self) -> f64 {
        hermitian_residual(&self.matrix)
    }
}

/// A channel is (numerically) a Pauli channel when every off-diagonal
/// process-matrix entry is within `tol` of zero.
pub fn is_pauli_channel(choi: &ChoiMatrix, tol: f64) -> bool {
    choi.off_diagonal_max() <= tol
}

fn coefficient_vector(
    sum: &crate::channel::PauliSum,
    basis: &[PauliString],
) -> DVector<Complex64> {
    DVector::from_iterator(basis.len(), basis.iter().map(|g| sum.coefficient(g)))
}

fn chi_from_branches(
    n: usize,
    branches: &[(crate::channel::PauliSum, f64)],
) -> Result<ChoiMatrix, SimError> {
    check_dense_limit(n, CHOI_QUBIT_LIMIT)?;
    let basis = all_paulis(n)?;
    let dim = basis.len();
    let mut matrix = CMatrix::zeros(dim, dim);
    for (sum, weight) in branches {
        let c = coefficient_vector(sum, &basis);
        matrix += (&c * c.adjoint()).scale(*weight);
    }
    Ok(ChoiMatrix { n, basis, matrix })
}

/// Process matrix of the raw channel, with branches normalised exactly as in
/// probability reporting so the diagonal of a twirled channel matches the
/// predicted probabilities.
pub fn choi_of_channel(channel: &NoiseChannel) -> Result<ChoiMatrix, SimError> {
    let weights = channel.branch_weights();
    let mut branches = Vec::with_capacity(channel.operators().len());
    for (op, weight) in channel.operators().iter().zip(weights) {
        branches.push((op.to_pauli_sum()?.normalized(), weight));
    }
    chi_from_branches(channel.n(), &branches)
}

/// Process matrix of the channel twirled over `w_set`: every Kraus branch is
/// conjugated by every twirling gate at weight `1/|W|`.
pub fn choi_of_twirled(
    channel: &NoiseChannel,
    w_set: &[PauliString],
) -> Result<ChoiMatrix, SimError> {
    if w_set.is_empty() {
        return Err(SimError::EmptyTwirlSet);
    }
    let weights = channel.branch_weights();
    let mut branches = Vec::with_capacity(channel.operators().len() * w_set.len());
    for (op, weight) in channel.operators().iter().zip(weights) {
        let sum = op.to_pauli_sum()?.normalized();
        for w in w_set {
            if w.n() != channel.n() {
                return Err(SimError::QubitMismatch {
                    left: w.n(),
                    right: channel.n(),
                });
            }
            // Conjugating a Pauli-basis operator flips coefficient signs on
            // the anticommuting terms.
            let mut conjugated = crate::channel::PauliSum::new(channel.n());
            for (g, c) in sum.iter() {
                let sign = w.zeta(g).map_err(SimError::Core)?;
                conjugated.add_term(g.clone(), c * Complex64::new(sign as f64, 0.0))?;
            }
            branches.push((conjugated, weight / w_set.len() as f64));
        }
    }
    chi_from_branches(channel.n(), &branches)
}
