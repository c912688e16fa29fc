//! Noise operators and channels in their Pauli-basis and dense forms.

use std::collections::BTreeMap;

use num_complex::Complex64;
use twirl_core::{Pauli, PauliString};

use crate::dense::{check_dense_limit, qubits_of_dim, CMatrix, PauliAction, DENSE_QUBIT_LIMIT};
use crate::error::SimError;

/// Relative floor below which a trace coefficient counts as zero, so float
/// noise cannot inflate the Pauli basis.
const RELATIVE_ZERO: f64 = 1e-12;

/// A complex-weighted combination of Pauli strings: a noise operator in its
/// Pauli basis.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n: usize,
    terms: BTreeMap<PauliString, Complex64>,
}

impl PauliSum {
    pub fn new(n: usize) -> Self {
        PauliSum {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(n: usize, terms: I) -> Result<Self, SimError>
    where
        I: IntoIterator<Item = (PauliString, Complex64)>,
    {
        let mut sum = PauliSum::new(n);
        for (p, c) in terms {
            sum.add_term(p, c)?;
        }
        Ok(sum)
    }

    /// Add `c * p`, merging with an existing term and dropping the term if
    /// the merged coefficient is exactly zero.
    pub fn add_term(&mut self, p: PauliString, c: Complex64) -> Result<(), SimError> {
        if p.n() != self.n {
            return Err(SimError::QubitMismatch {
                left: self.n,
                right: p.n(),
            });
        }
        let merged = self.coefficient(&p) + c;
        if merged.norm() == 0.0 {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, merged);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms
            .get(p)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Terms in canonical Pauli order.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &Complex64)> {
        self.terms.iter()
    }

    /// Drop terms with magnitude at or below `threshold`.
    pub fn prune(&mut self, threshold: f64) {
        self.terms.retain(|_, c| c.norm() > threshold);
    }

    /// `tr(M†M) / 2^n = Σ |c|²`: the Frobenius mass used for normalisation.
    pub fn frobenius_mass(&self) -> f64 {
        self.terms.values().map(|c| c.norm_sqr()).sum()
    }

    /// Scale so the Frobenius mass is one; a zero operator stays zero.
    pub fn normalized(&self) -> PauliSum {
        let mass = self.frobenius_mass();
        if mass == 0.0 {
            return self.clone();
        }
        let scale = Complex64::new(1.0 / mass.sqrt(), 0.0);
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), c * scale))
            .collect();
        PauliSum { n: self.n, terms }
    }

    pub fn scaled(&self, factor: Complex64) -> PauliSum {
        let terms = self
            .terms
            .iter()
            .map(|(p, c)| (p.clone(), c * factor))
            .collect();
        PauliSum { n: self.n, terms }
    }
}

/// A dense operator on `n` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    n: usize,
    matrix: CMatrix,
}

impl DenseOperator {
    pub fn new(matrix: CMatrix) -> Result<Self, SimError> {
        if matrix.nrows() != matrix.ncols() {
            return Err(SimError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        let n = qubits_of_dim(matrix.nrows()).ok_or(SimError::NotPowerOfTwo {
            dim: matrix.nrows(),
        })?;
        check_dense_limit(n, DENSE_QUBIT_LIMIT)?;
        Ok(DenseOperator { n, matrix })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// `tr(M†M) / 2^n`.
    pub fn frobenius_mass(&self) -> f64 {
        self.matrix.iter().map(|c| c.norm_sqr()).sum::<f64>() / (1u64 << self.n) as f64
    }
}

/// One Kraus operator of a channel, in whichever form it arrived.
#[derive(Clone, Debug)]
pub enum KrausOperator {
    Sum(PauliSum),
    Dense(DenseOperator),
}

impl KrausOperator {
    pub fn n(&self) -> usize {
        match self {
            KrausOperator::Sum(s) => s.n(),
            KrausOperator::Dense(d) => d.n(),
        }
    }

    pub fn frobenius_mass(&self) -> f64 {
        match self {
            KrausOperator::Sum(s) => s.frobenius_mass(),
            KrausOperator::Dense(d) => d.frobenius_mass(),
        }
    }

    /// Dense matrix of the operator.
    pub fn to_matrix(&self) -> Result<CMatrix, SimError> {
        match self {
            KrausOperator::Sum(s) => Ok(reconstruct(s)?.matrix.clone()),
            KrausOperator::Dense(d) => Ok(d.matrix.clone()),
        }
    }

    /// Pauli-basis form: sums pass through, dense operators are decomposed
    /// with no absolute cutoff.
    pub fn to_pauli_sum(&self) -> Result<PauliSum, SimError> {
        match self {
            KrausOperator::Sum(s) => Ok(s.clone()),
            KrausOperator::Dense(d) => decompose(d, 0.0),
        }
    }
}

/// A noise channel: a list of Kraus operators with optional branch weights
/// (for channels written as probabilistic mixtures of operators).
#[derive(Clone, Debug)]
pub struct NoiseChannel {
    n: usize,
    operators: Vec<KrausOperator>,
    weights: Option<Vec<f64>>,
}

impl NoiseChannel {
    pub fn new(operators: Vec<KrausOperator>, weights: Option<Vec<f64>>) -> Result<Self, SimError> {
        let Some(first) = operators.first() else {
            return Err(SimError::EmptyChannel);
        };
        let n = first.n();
        for op in &operators {
            if op.n() != n {
                return Err(SimError::QubitMismatch {
                    left: n,
                    right: op.n(),
                });
            }
        }
        if let Some(w) = &weights {
            if w.len() != operators.len() {
                return Err(SimError::WeightCountMismatch {
                    got: w.len(),
                    expected: operators.len(),
                });
            }
            for value in w {
                if !(0.0..=1.0).contains(value) {
                    return Err(SimError::InvalidProbability { value: *value });
                }
            }
        }
        Ok(NoiseChannel {
            n,
            operators,
            weights,
        })
    }

    /// Single-operator channel, the usual case.
    pub fn single(op: KrausOperator) -> Result<Self, SimError> {
        NoiseChannel::new(vec![op], None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn operators(&self) -> &[KrausOperator] {
        &self.operators
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Normalised branch weights for probability reporting: explicit weights
    /// are used as given; otherwise each branch carries its natural share of
    /// the total Frobenius mass, which reproduces the exact probabilities of
    /// a trace-preserving Kraus set.
    pub fn branch_weights(&self) -> Vec<f64> {
        match &self.weights {
            Some(w) => w.clone(),
            None => {
                let masses: Vec<f64> = self.operators.iter().map(|o| o.frobenius_mass()).collect();
                let total: f64 = masses.iter().sum();
                if total == 0.0 {
                    vec![0.0; masses.len()]
                } else {
                    masses.iter().map(|m| m / total).collect()
                }
            }
        }
    }

    /// `max |(Σ w_b M_b† M_b) - I|`: zero for a trace-preserving channel.
    pub fn completeness_residual(&self) -> Result<f64, SimError> {
        let dim = 1usize << self.n;
        let mut acc = CMatrix::zeros(dim, dim);
        let weights = self
            .weights
            .clone()
            .unwrap_or_else(|| vec![1.0; self.operators.len()]);
        for (op, w) in self.operators.iter().zip(weights) {
            let m = op.to_matrix()?;
            acc += (m.adjoint() * m).scale(w);
        }
        Ok(crate::dense::max_abs(&(acc - CMatrix::identity(dim, dim))))
    }

    pub fn is_complete(&self, tol: f64) -> Result<bool, SimError> {
        Ok(self.completeness_residual()? <= tol)
    }
}

/// Decompose a dense operator over the Pauli basis: the coefficient of `g`
/// is `tr(g M) / 2^n`. Terms with magnitude at or below `threshold` are
/// dropped.
pub fn decompose(m: &DenseOperator, threshold: f64) -> Result<PauliSum, SimError> {
    let n = m.n();
    let scale = 1.0 / (1u64 << n) as f64;
    let mut sum = PauliSum::new(n);
    for g in all_paulis(n)? {
        let c = crate::dense::trace_with_pauli(&g, &m.matrix)? * scale;
        if c.norm() > threshold && c.norm() > 0.0 {
            sum.add_term(g, c)?;
        }
    }
    Ok(sum)
}

/// Rebuild the dense operator `Σ c_g g` of a Pauli sum.
pub fn reconstruct(s: &PauliSum) -> Result<DenseOperator, SimError> {
    check_dense_limit(s.n(), DENSE_QUBIT_LIMIT)?;
    let dim = 1usize << s.n();
    let mut out = CMatrix::zeros(dim, dim);
    for (p, c) in s.iter() {
        let action = PauliAction::new(p)?;
        let x = action.x_mask as usize;
        for col in 0..dim {
            out[(col ^ x, col)] += c * action.amplitude(col as u64);
        }
    }
    DenseOperator::new(out)
}

/// The Pauli basis of a channel: every Pauli whose coefficient in some Kraus
/// operator stands clear of both `threshold` and the relative zero floor.
/// Canonically ordered. For multi-operator channels this is the union basis,
/// which twirls the whole channel but need not be the smallest possible set.
pub fn pauli_basis(channel: &NoiseChannel, threshold: f64) -> Result<Vec<PauliString>, SimError> {
    let mut basis: Vec<PauliString> = Vec::new();
    for op in channel.operators() {
        let sum = op.to_pauli_sum()?;
        let peak = sum
            .iter()
            .map(|(_, c)| c.norm())
            .fold(0.0f64, f64::max);
        let floor = threshold.max(RELATIVE_ZERO * peak);
        for (p, c) in sum.iter() {
            if c.norm() > floor {
                basis.push(p.clone());
            }
        }
    }
    basis.sort();
    basis.dedup();
    Ok(basis)
}

/// All `4^n` Pauli strings in canonical order.
pub(crate) fn all_paulis(n: usize) -> Result<Vec<PauliString>, SimError> {
    check_dense_limit(n, DENSE_QUBIT_LIMIT)?;
    let mut out = Vec::with_capacity(1usize << (2 * n));
    let mut paulis = vec![Pauli::I; n];
    fill(&mut out, &mut paulis, 0);
    out.sort();
    return Ok(out);

    fn fill(out: &mut Vec<PauliString>, paulis: &mut Vec<Pauli>, k: usize) {
        if k == paulis.len() {
            out.push(PauliString::from_paulis(paulis).unwrap());
            return;
        }
        for p in [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z] {
            paulis[k] = p;
            fill(out, paulis, k + 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::max_abs;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn p(text: &str) -> PauliString {
        text.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, rng: &mut ChaCha20Rng) -> CMatrix {
        let dim = 1usize << n;
        CMatrix::from_fn(dim, dim, |_, _| {
            c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0)
        })
    }

    #[test]
    fn decompose_projector_on_zero() {
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.0, 0.0);
        let sum = decompose(&DenseOperator::new(m).unwrap(), 0.0).unwrap();
        assert_eq!(sum.len(), 2);
        assert!((sum.coefficient(&p("I")) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((sum.coefficient(&p("Z")) - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn decompose_hadamard() {
        let s = 1.0 / 2.0f64.sqrt();
        let m = CMatrix::from_row_slice(2, 2, &[c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)]);
        let sum = decompose(&DenseOperator::new(m).unwrap(), 0.0).unwrap();
        assert_eq!(sum.len(), 2);
        assert!((sum.coefficient(&p("X")) - c(s, 0.0)).norm() < 1e-15);
        assert!((sum.coefficient(&p("Z")) - c(s, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn decompose_reconstruct_roundtrip() {
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        for _ in 0..10 {
            let m = random_matrix(2, &mut rng);
            let op = DenseOperator::new(m.clone()).unwrap();
            let rebuilt = reconstruct(&decompose(&op, 0.0).unwrap()).unwrap();
            assert!(max_abs(&(rebuilt.matrix() - &m)) < 1e-12);
        }
    }

    #[test]
    fn reconstruct_decompose_is_identity_on_sums() {
        let mut rng = ChaCha20Rng::seed_from_u64(8);
        for _ in 0..10 {
            let mut sum = PauliSum::new(2);
            for g in ["IX", "ZZ", "YI", "XY"] {
                sum.add_term(
                    p(g),
                    c(rng.random::<f64>() * 2.0 - 1.0, rng.random::<f64>() * 2.0 - 1.0),
                )
                .unwrap();
            }
            let back = decompose(&reconstruct(&sum).unwrap(), 0.0).unwrap();
            for (g, coeff) in sum.iter() {
                assert!((back.coefficient(g) - coeff).norm() < 1e-12);
            }
            assert_eq!(back.len(), sum.len());
        }
    }

    #[test]
    fn reconstruct_empty_sum_is_zero() {
        let zero = reconstruct(&PauliSum::new(2)).unwrap();
        assert_eq!(max_abs(zero.matrix()), 0.0);
    }

    #[test]
    fn decompose_is_linear() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let a = random_matrix(2, &mut rng);
        let b = random_matrix(2, &mut rng);
        let alpha = c(0.3, -1.1);
        let beta = c(-0.4, 0.2);
        let combined = DenseOperator::new(a.clone() * alpha + b.clone() * beta).unwrap();
        let da = decompose(&DenseOperator::new(a).unwrap(), 0.0).unwrap();
        let db = decompose(&DenseOperator::new(b).unwrap(), 0.0).unwrap();
        let dc = decompose(&combined, 0.0).unwrap();
        for g in all_paulis(2).unwrap() {
            let expected = alpha * da.coefficient(&g) + beta * db.coefficient(&g);
            assert!((dc.coefficient(&g) - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn parseval_consistency() {
        // Σ_g |tr(gM)|² / 2^n == ||M||_F², i.e. the Frobenius mass of the
        // decomposition times 2^n recovers the squared Frobenius norm.
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        for n in 1..=3 {
            let m = random_matrix(n, &mut rng);
            let frob: f64 = m.iter().map(|v| v.norm_sqr()).sum();
            let sum = decompose(&DenseOperator::new(m).unwrap(), 0.0).unwrap();
            assert!((sum.frobenius_mass() * (1u64 << n) as f64 - frob).abs() < 1e-10);
        }
    }

    #[test]
    fn basis_of_named_operators() {
        let mut sum = PauliSum::new(2);
        for (g, w) in [
            ("IX", 1.0),
            ("IZ", 1.0),
            ("YX", 1.0),
            ("ZX", 1.0 / 2.0f64.sqrt()),
            ("YY", 1.0),
        ] {
            sum.add_term(p(g), c(w, 0.0)).unwrap();
        }
        let channel = NoiseChannel::single(KrausOperator::Sum(sum)).unwrap();
        let basis = pauli_basis(&channel, 0.0).unwrap();
        assert_eq!(basis, vec![p("IX"), p("IZ"), p("ZX"), p("YX"), p("YY")]);

        let mut field = PauliSum::new(8);
        for k in 1..=8 {
            field
                .add_term(PauliString::parse(&format!("Z{k}"), Some(8)).unwrap(), c(1.0, 0.0))
                .unwrap();
        }
        let channel = NoiseChannel::single(KrausOperator::Sum(field)).unwrap();
        assert_eq!(pauli_basis(&channel, 0.0).unwrap().len(), 8);
    }

    #[test]
    fn basis_of_identity_is_identity() {
        let channel = NoiseChannel::single(KrausOperator::Dense(
            DenseOperator::new(CMatrix::identity(2, 2)).unwrap(),
        ))
        .unwrap();
        assert_eq!(pauli_basis(&channel, 0.0).unwrap(), vec![p("I")]);
    }

    #[test]
    fn basis_of_single_pauli_is_that_pauli() {
        for g in ["IX", "ZZ", "YI"] {
            let channel = NoiseChannel::single(KrausOperator::Sum(
                PauliSum::from_terms(2, [(p(g), c(0.7, -0.1))]).unwrap(),
            ))
            .unwrap();
            assert_eq!(pauli_basis(&channel, 0.0).unwrap(), vec![p(g)]);
        }
    }

    #[test]
    fn relative_floor_drops_float_noise() {
        let mut sum = PauliSum::new(1);
        sum.add_term(p("X"), c(1.0, 0.0)).unwrap();
        sum.add_term(p("Z"), c(1e-15, 0.0)).unwrap();
        let channel = NoiseChannel::single(KrausOperator::Sum(sum)).unwrap();
        assert_eq!(pauli_basis(&channel, 0.0).unwrap(), vec![p("X")]);
    }

    #[test]
    fn completeness_of_bit_flip_channel() {
        let prob: f64 = 0.3;
        let i_op = PauliSum::from_terms(1, [(p("I"), c((1.0 - prob).sqrt(), 0.0))]).unwrap();
        let x_op = PauliSum::from_terms(1, [(p("X"), c(prob.sqrt(), 0.0))]).unwrap();
        let channel = NoiseChannel::new(
            vec![KrausOperator::Sum(i_op), KrausOperator::Sum(x_op)],
            None,
        )
        .unwrap();
        assert!(channel.is_complete(1e-10).unwrap());

        let lone = NoiseChannel::single(KrausOperator::Sum(
            PauliSum::from_terms(1, [(p("X"), c(0.5, 0.0))]).unwrap(),
        ))
        .unwrap();
        assert!(!lone.is_complete(1e-10).unwrap());
    }

    #[test]
    fn mismatched_branches_are_rejected() {
        let a = KrausOperator::Sum(PauliSum::new(1));
        let b = KrausOperator::Sum(PauliSum::new(2));
        assert!(matches!(
            NoiseChannel::new(vec![a, b], None),
            Err(SimError::QubitMismatch { .. })
        ));
        assert!(matches!(
            NoiseChannel::new(vec![], None),
            Err(SimError::EmptyChannel)
        ));
    }
}
