//! Dense representations of Pauli operators and the permutation arithmetic
//! behind them.
//!
//! A Pauli string acts on computational basis states as a bit-flip
//! permutation with a phase: `g|m> = i^y (-1)^(z·m) |m XOR x>`, where `x`
//! and `z` are its symplectic bit masks and `y` counts its `Y` sites. That
//! structure gives `O(4^n)` conjugation and `O(2^n)` traces against a dense
//! matrix without ever materialising the Pauli as a matrix.

use nalgebra::DMatrix;
use num_complex::Complex64;
use twirl_core::PauliString;

use crate::error::SimError;

pub type CMatrix = DMatrix<Complex64>;

/// Cap for materialising `2^n x 2^n` operators (matrices, decomposition).
pub const DENSE_QUBIT_LIMIT: usize = 10;
/// Cap for density-matrix level simulation.
pub const STATE_QUBIT_LIMIT: usize = 8;
/// Cap for `4^n x 4^n` process matrices.
pub const CHOI_QUBIT_LIMIT: usize = 4;

pub(crate) fn check_dense_limit(n: usize, limit: usize) -> Result<(), SimError> {
    if n > limit {
        return Err(SimError::DenseLimit { n, limit });
    }
    Ok(())
}

/// Bit masks and phase data for applying a Pauli by index permutation.
pub(crate) struct PauliAction {
    pub x_mask: u64,
    pub z_mask: u64,
    /// `i^y` for `y` sites carrying `Y`.
    pub phase: Complex64,
}

impl PauliAction {
    pub fn new(p: &PauliString) -> Result<Self, SimError> {
        check_dense_limit(p.n(), DENSE_QUBIT_LIMIT)?;
        let mut x_mask = 0u64;
        let mut z_mask = 0u64;
        // Qubit 0, the leftmost literal character, is the first Kronecker
        // factor and therefore the most significant index bit.
        for k in 0..p.n() {
            let bit = p.n() - 1 - k;
            if p.x_bit(k) {
                x_mask |= 1 << bit;
            }
            if p.z_bit(k) {
                z_mask |= 1 << bit;
            }
        }
        let phase = match p.y_count() % 4 {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, 1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, -1.0),
        };
        Ok(PauliAction {
            x_mask,
            z_mask,
            phase,
        })
    }

    /// Amplitude of `p|m>` on `|m XOR x>`.
    pub fn amplitude(&self, m: u64) -> Complex64 {
        if (self.z_mask & m).count_ones() % 2 == 1 {
            -self.phase
        } else {
            self.phase
        }
    }
}

/// Dense `2^n x 2^n` matrix of a Pauli string; the convention fixes
/// `Y = [[0, -i], [i, 0]]`.
pub fn pauli_matrix(p: &PauliString) -> Result<CMatrix, SimError> {
    let action = PauliAction::new(p)?;
    let dim = 1usize << p.n();
    let mut out = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let row = col ^ action.x_mask as usize;
        out[(row, col)] = action.amplitude(col as u64);
    }
    Ok(out)
}

/// Conjugation `w M w` of a dense matrix by a Pauli, via index permutation:
/// entry `(a, b)` becomes `±M[a XOR x, b XOR x]`.
pub fn pauli_conjugate(w: &PauliString, m: &CMatrix) -> Result<CMatrix, SimError> {
    let dim = 1usize << w.n();
    if m.nrows() != dim || m.ncols() != dim {
        return Err(SimError::QubitMismatch {
            left: w.n(),
            right: qubits_of_dim(m.nrows()).unwrap_or(0),
        });
    }
    let action = PauliAction::new(w)?;
    let x = action.x_mask as usize;
    let mut out = CMatrix::zeros(dim, dim);
    for b in 0..dim {
        for a in 0..dim {
            let sign = (action.z_mask & (a ^ b) as u64).count_ones() % 2;
            let value = m[(a ^ x, b ^ x)];
            out[(a, b)] = if sign == 1 { -value } else { value };
        }
    }
    Ok(out)
}

/// `tr(p M)` without materialising `p`.
pub fn trace_with_pauli(p: &PauliString, m: &CMatrix) -> Result<Complex64, SimError> {
    let dim = 1usize << p.n();
    if m.nrows() != dim || m.ncols() != dim {
        return Err(SimError::QubitMismatch {
            left: p.n(),
            right: qubits_of_dim(m.nrows()).unwrap_or(0),
        });
    }
    let action = PauliAction::new(p)?;
    let x = action.x_mask as usize;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..dim {
        sum += action.amplitude(j as u64).conj() * m[(j ^ x, j)];
    }
    Ok(sum)
}

/// Number of qubits for a `2^n` dimension, when it is one.
pub(crate) fn qubits_of_dim(dim: usize) -> Option<usize> {
    if dim.is_power_of_two() && dim > 0 {
        Some(dim.trailing_zeros() as usize)
    } else {
        None
    }
}

pub(crate) fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

pub(crate) fn hermitian_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub(crate) fn unitarity_residual(m: &CMatrix) -> f64 {
    let dim = m.nrows();
    max_abs(&(m.adjoint() * m - CMatrix::identity(dim, dim)))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub(crate) fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut eigs: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    eigs.sort_by(f64::total_cmp);
    eigs
}
