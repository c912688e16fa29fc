//! Density matrices and the standard distances between them.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use crate::dense::{
    check_dense_limit, hermitian_eigenvalues, hermitian_residual, max_abs, qubits_of_dim, CMatrix,
    STATE_QUBIT_LIMIT,
};
use crate::error::SimError;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIGENVALUE_FLOOR: f64 = -1e-10;

/// An `n`-qubit density matrix.
///
/// Validation requires Hermiticity and unit trace to `1e-12` and eigenvalues
/// above `-1e-10`. Channel outputs are produced unchecked (an intentionally
/// bad twirling set yields a non-Pauli, non-normalised result worth
/// inspecting) and can be validated explicitly.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self, SimError> {
        let state = DensityMatrix::new_unchecked_from(matrix)?;
        state.validate()?;
        Ok(state)
    }

    /// Wrap a matrix without checking the density-matrix invariants; the
    /// dimension must still be a power of two within the state cap.
    pub fn new_unchecked_from(matrix: CMatrix) -> Result<Self, SimError> {
        if matrix.nrows() != matrix.ncols() {
            return Err(SimError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let n = qubits_of_dim(matrix.nrows()).ok_or(SimError::NotPowerOfTwo {
            dim: matrix.nrows(),
        })?;
        check_dense_limit(n, STATE_QUBIT_LIMIT)?;
        Ok(DensityMatrix { n, matrix })
    }

    /// `|psi><psi|` for a state vector, normalising the vector first.
    pub fn pure(state: DVector<Complex64>) -> Result<Self, SimError> {
        let norm = state.norm();
        if norm == 0.0 {
            return Err(SimError::InvalidDensity {
                reason: "zero state vector",
                residual: 0.0,
            });
        }
        let normalised = state.unscale(norm);
        let matrix = &normalised * normalised.adjoint();
        DensityMatrix::new_unchecked_from(matrix)
    }

    /// Computational basis state `|index>` on `n` qubits.
    pub fn basis_state(n: usize, index: usize) -> Result<Self, SimError> {
        check_dense_limit(n, STATE_QUBIT_LIMIT)?;
        let dim = 1usize << n;
        assert!(index < dim, "basis index {index} out of range");
        let mut state = DVector::zeros(dim);
        state[index] = Complex64::new(1.0, 0.0);
        DensityMatrix::pure(state)
    }

    pub fn maximally_mixed(n: usize) -> Result<Self, SimError> {
        check_dense_limit(n, STATE_QUBIT_LIMIT)?;
        let dim = 1usize << n;
        let matrix = CMatrix::identity(dim, dim).scale(1.0 / dim as f64);
        DensityMatrix::new_unchecked_from(matrix)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    /// Check Hermiticity, unit trace and positive semidefiniteness within
    /// the standard tolerances.
    pub fn validate(&self) -> Result<(), SimError> {
        let herm = hermitian_residual(&self.matrix);
        if herm > HERMITIAN_TOL {
            return Err(SimError::InvalidDensity {
                reason: "not Hermitian",
                residual: herm,
            });
        }
        let trace = self.matrix.trace();
        let trace_residual = (trace - Complex64::new(1.0, 0.0)).norm();
        if trace_residual > TRACE_TOL {
            return Err(SimError::InvalidDensity {
                reason: "trace differs from one",
                residual: trace_residual,
            });
        }
        let symmetrised = (&self.matrix + self.matrix.adjoint()).scale(0.5);
        if let Some(lowest) = hermitian_eigenvalues(&symmetrised).first() {
            if *lowest < EIGENVALUE_FLOOR {
                return Err(SimError::InvalidDensity {
                    reason: "negative eigenvalue",
                    residual: *lowest,
                });
            }
        }
        Ok(())
    }

    /// Largest entry-wise deviation from another state.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> Result<f64, SimError> {
        if self.n != other.n {
            return Err(SimError::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(max_abs(&(&self.matrix - &other.matrix)))
    }

    /// Trace distance, half the sum of the absolute eigenvalues of the
    /// difference.
    pub fn trace_distance(&self, other: &DensityMatrix) -> Result<f64, SimError> {
        if self.n != other.n {
            return Err(SimError::QubitMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let diff = &self.matrix - &other.matrix;
        let herm = (&diff + diff.adjoint()).scale(0.5);
        Ok(hermitian_eigenvalues(&herm).iter().map(|e| e.abs()).sum::<f64>() / 2.0)
    }
}

/// A random density matrix drawn by conjugating the identity with a random
/// square matrix: `A A† / tr(A A†)`. Deterministic for a seeded generator.
pub fn random_density<R: Rng>(n: usize, rng: &mut R) -> Result<DensityMatrix, SimError> {
    check_dense_limit(n, STATE_QUBIT_LIMIT)?;
    let dim = 1usize << n;
    let a = CMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
    });
    let mut rho = &a * a.adjoint();
    let trace = rho.trace().re;
    rho /= Complex64::new(trace, 0.0);
    DensityMatrix::new_unchecked_from(rho)
}
