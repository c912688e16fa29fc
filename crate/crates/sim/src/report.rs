//! Machine- and human-readable verification reports.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use twirl_core::{full_pauli_baseline, span, verify_condition, TwirlPlan};

use crate::channel::{reconstruct, NoiseChannel};
use crate::choi::{choi_of_twirled, is_pauli_channel};
use crate::dense::{max_abs, CMatrix};
use crate::density::random_density;
use crate::error::SimError;
use crate::twirl::{exact_twirl, predicted_channel};
use crate::{CHOI_QUBIT_LIMIT, STATE_QUBIT_LIMIT};

/// One named check: the tolerance it ran at, the residual it measured, and
/// the verdict.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub tolerance: f64,
    pub residual: f64,
    pub passed: bool,
}

impl CheckResult {
    fn new(name: &str, tolerance: f64, residual: f64) -> Self {
        CheckResult {
            name: name.to_string(),
            tolerance,
            residual,
            passed: residual <= tolerance,
        }
    }

    fn skipped(name: &str, reason: &str) -> Self {
        CheckResult {
            name: format!("{name} (skipped: {reason})"),
            tolerance: f64::INFINITY,
            residual: 0.0,
            passed: true,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub all_passed: bool,
}

impl VerificationReport {
    pub fn from_checks(checks: Vec<CheckResult>) -> Self {
        let all_passed = checks.iter().all(|c| c.passed);
        VerificationReport { checks, all_passed }
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(5)
            .max(5);
        writeln!(f, "{:width$}  {:>12}  {:>12}  verdict", "check", "tolerance", "residual")?;
        for c in &self.checks {
            writeln!(
                f,
                "{:width$}  {:>12.3e}  {:>12.3e}  {}",
                c.name,
                c.tolerance,
                c.residual,
                if c.passed { "pass" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "overall: {}",
            if self.all_passed { "pass" } else { "FAIL" }
        )
    }
}

/// Knobs for the standard verification battery.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random states per state-level comparison.
    pub state_samples: usize,
    /// Tolerance for process-matrix checks.
    pub choi_tol: f64,
    /// Tolerance for state-level residuals; when `None`, picked by size
    /// (`1e-10` up to 4 qubits, `1e-8` beyond).
    pub state_tol: Option<f64>,
    /// Include the full-Pauli baseline comparison.
    pub baseline: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            state_samples: 20,
            choi_tol: 1e-10,
            state_tol: None,
            baseline: false,
        }
    }
}

/// Run the standard checks of a constructed plan against its channel:
///
/// 1. the twirling condition, combinatorially over every basis pair;
/// 2. the size bounds on the generator count;
/// 3. process-matrix diagonality of the twirled channel (within the cap);
/// 4. process-matrix diagonal against the predicted probabilities;
/// 5. exactly twirled random states against the predicted channel (within
///    the cap);
/// 6. optionally, the full-Pauli baseline sizes and condition.
pub fn run_standard_checks(
    channel: &NoiseChannel,
    plan: &TwirlPlan,
    config: &VerifyConfig,
) -> Result<VerificationReport, SimError> {
    let n = plan.n();
    let mut checks = Vec::new();

    let w_set = plan.twirl_set().map_err(SimError::Core)?;
    let condition = verify_condition(&w_set, &plan.v).map_err(SimError::Core)?;
    let worst = condition
        .violations
        .iter()
        .map(|v| v.sum.unsigned_abs() as f64)
        .fold(0.0f64, f64::max);
    checks.push(CheckResult::new("twirling condition (all pairs)", 0.0, worst));

    let d = &plan.diagnostics;
    let lower = ceil_log2(d.v_size);
    let bounds_ok = lower <= d.w_tilde_size
        && (d.v_tilde_size == 0 || d.w_tilde_size <= d.v_tilde_size)
        && d.v_size as u128 <= d.w_size;
    checks.push(CheckResult::new(
        "size bounds",
        0.0,
        if bounds_ok { 0.0 } else { 1.0 },
    ));

    if n <= CHOI_QUBIT_LIMIT {
        let chi = choi_of_twirled(channel, &w_set)?;
        checks.push(CheckResult::new(
            "process matrix off-diagonals",
            config.choi_tol,
            chi.off_diagonal_max(),
        ));
        let predicted = predicted_channel(channel, 0.0)?;
        let mut diag_residual = 0.0f64;
        for (g, value) in chi.diagonal() {
            diag_residual = diag_residual.max((value - predicted.probability(&g)).abs());
        }
        checks.push(CheckResult::new(
            "process matrix diagonal vs predicted",
            config.choi_tol,
            diag_residual,
        ));
        let pauli_verdict = is_pauli_channel(&chi, config.choi_tol);
        checks.push(CheckResult::new(
            "twirled channel is a Pauli channel",
            0.0,
            if pauli_verdict { 0.0 } else { 1.0 },
        ));
    } else {
        checks.push(CheckResult::skipped(
            "process matrix off-diagonals",
            "beyond the process-matrix cap",
        ));
    }

    if n <= STATE_QUBIT_LIMIT {
        let state_tol = config
            .state_tol
            .unwrap_or(if n <= 4 { 1e-10 } else { 1e-8 });
        let predicted = predicted_channel(channel, 0.0)?;
        let weights = channel.branch_weights();
        let mut branch_matrices = Vec::with_capacity(channel.operators().len());
        for op in channel.operators() {
            branch_matrices.push(reconstruct(&op.to_pauli_sum()?.normalized())?);
        }
        let dim = 1usize << n;
        let mut rng = ChaCha20Rng::seed_from_u64(config.seed);
        let mut residual = 0.0f64;
        for _ in 0..config.state_samples {
            let rho = random_density(n, &mut rng)?;
            let mut twirled = CMatrix::zeros(dim, dim);
            for (m, weight) in branch_matrices.iter().zip(&weights) {
                twirled += exact_twirl(&w_set, m.matrix(), &rho)?.matrix().scale(*weight);
            }
            let expected = predicted.apply(&rho)?;
            residual = residual.max(max_abs(&(twirled - expected.matrix())));
        }
        checks.push(CheckResult::new(
            "state twirl vs predicted channel",
            state_tol,
            residual,
        ));
    } else {
        checks.push(CheckResult::skipped(
            "state twirl vs predicted channel",
            "beyond the state cap",
        ));
    }

    if config.baseline {
        let baseline = full_pauli_baseline(n).map_err(SimError::Core)?;
        checks.push(CheckResult::new(
            "generator count vs full-Pauli baseline",
            f64::INFINITY,
            (plan.w_tilde.len() as f64) / (baseline.len() as f64),
        ));
        if n <= 4 {
            let full = span(n, &baseline).map_err(SimError::Core)?;
            let condition = verify_condition(&full, &plan.v).map_err(SimError::Core)?;
            checks.push(CheckResult::new(
                "baseline twirling condition",
                0.0,
                if condition.satisfied { 0.0 } else { 1.0 },
            ));
        }
    }

    Ok(VerificationReport::from_checks(checks))
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}
