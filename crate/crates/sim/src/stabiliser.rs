//! Stabiliser checks with discarded outcomes, as an error channel.

use twirl_core::PauliString;

use crate::dense::{max_abs, pauli_conjugate, pauli_matrix, CMatrix};
use crate::density::DensityMatrix;
use crate::error::SimError;
use crate::twirl::apply_kraus;

const CODE_SPACE_TOL: f64 = 1e-10;

/// The channel left after measuring stabiliser `s` on a noisy code state and
/// throwing the outcome away: project the noisy state onto each eigenspace
/// of `s` and sum the branches.
///
/// `rho` must be supported on a single eigenspace of `s` (a prior Pauli error
/// on the code state may have flipped it to the `-1` eigenspace; the channel
/// is unchanged). On such states this equals the one-gate twirl with `s`.
pub fn stabiliser_check_channel(
    s: &PauliString,
    m: &CMatrix,
    rho: &DensityMatrix,
) -> Result<DensityMatrix, SimError> {
    if s.n() != rho.n() {
        return Err(SimError::QubitMismatch {
            left: s.n(),
            right: rho.n(),
        });
    }
    let dim = rho.matrix().nrows();
    if m.nrows() != dim || m.ncols() != dim {
        return Err(SimError::QubitMismatch {
            left: m.nrows(),
            right: dim,
        });
    }

    // Support check: conjugation by s must fix the state.
    let conjugated = pauli_conjugate(s, rho.matrix())?;
    let residual = max_abs(&(&conjugated - rho.matrix()));
    if residual > CODE_SPACE_TOL {
        return Err(SimError::OutsideCodeSpace { residual });
    }

    let s_mat = pauli_matrix(s)?;
    let identity = CMatrix::identity(dim, dim);
    let plus = (&identity + &s_mat).scale(0.5);
    let minus = (&identity - &s_mat).scale(0.5);

    let noisy = apply_kraus(m, rho.matrix())?;
    let out = &plus * &noisy * &plus + &minus * &noisy * &minus;
    DensityMatrix::new_unchecked_from(out)
}
