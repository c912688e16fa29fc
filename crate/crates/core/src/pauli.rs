use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::bits::BitString;
use crate::error::CoreError;

/// Largest supported qubit count.
pub const MAX_QUBITS: usize = 1024;

/// Single-qubit Pauli operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    /// Symplectic bit pair `(x, z)`.
    pub fn xz(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    pub fn from_xz(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

/// Phase-free `n`-qubit Pauli operator in symplectic binary form.
///
/// Qubit `k` carries I/X/Z/Y for `(x_k, z_k)` = (0,0)/(1,0)/(0,1)/(1,1). No
/// phase is stored: the product of two operators is the bitwise XOR of their
/// bit strings, and two operators are equal exactly when their bit strings
/// are. The commutator sign is the symplectic inner product in the exponent,
/// `zeta(a, b) = (-1)^(a.x·b.z + a.z·b.x)`.
///
/// Ordering is lexicographic on the `z` bits then the `x` bits (qubit 0
/// first), which fixes a canonical order for set iteration and reports.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: BitString,
    z: BitString,
}

impl PauliString {
    /// Identity on `n` qubits.
    pub fn identity(n: usize) -> Result<Self, CoreError> {
        check_qubit_count(n)?;
        Ok(PauliString {
            n,
            x: BitString::zeros(n),
            z: BitString::zeros(n),
        })
    }

    /// Operator acting as `p` on `qubit` (0-based) and as identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Result<Self, CoreError> {
        let mut out = PauliString::identity(n)?;
        if qubit >= n {
            return Err(CoreError::Parse {
                message: format!("qubit index {qubit} out of range for {n} qubits"),
            });
        }
        out.set_pauli(qubit, p);
        Ok(out)
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Result<Self, CoreError> {
        let mut out = PauliString::identity(paulis.len())?;
        for (k, p) in paulis.iter().enumerate() {
            out.set_pauli(k, *p);
        }
        Ok(out)
    }

    /// Rebuild from a length-`2n` symplectic vector laid out as `(x | z)`.
    pub fn from_symplectic(n: usize, bits: &BitString) -> Result<Self, CoreError> {
        check_qubit_count(n)?;
        if bits.len() != 2 * n {
            return Err(CoreError::QubitCountMismatch {
                left: n,
                right: bits.len() / 2,
            });
        }
        Ok(PauliString {
            n,
            x: bits.slice(0, n),
            z: bits.slice(n, n),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x_bit(&self, qubit: usize) -> bool {
        self.x.get(qubit)
    }

    pub fn z_bit(&self, qubit: usize) -> bool {
        self.z.get(qubit)
    }

    pub fn pauli_at(&self, qubit: usize) -> Pauli {
        Pauli::from_xz(self.x.get(qubit), self.z.get(qubit))
    }

    pub fn set_pauli(&mut self, qubit: usize, p: Pauli) {
        let (x, z) = p.xz();
        self.x.set(qubit, x);
        self.z.set(qubit, z);
    }

    pub fn x_bits(&self) -> &BitString {
        &self.x
    }

    pub fn z_bits(&self) -> &BitString {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of qubits on which the operator acts non-trivially.
    pub fn weight(&self) -> usize {
        (0..self.n)
            .filter(|k| self.x.get(*k) || self.z.get(*k))
            .count()
    }

    /// Number of qubits carrying `Y`, i.e. with both bits set.
    pub fn y_count(&self) -> usize {
        (0..self.n)
            .filter(|k| self.x.get(*k) && self.z.get(*k))
            .count()
    }

    /// Product with all `±1`/`±i` phases discarded: bitwise XOR of the bit
    /// strings. Commutative and self-inverse.
    pub fn star(&self, other: &Self) -> Result<Self, CoreError> {
        self.check_same_n(other)?;
        Ok(PauliString {
            n: self.n,
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
        })
    }

    /// Commutator sign: `+1` if the operators commute as matrices, `-1` if
    /// they anticommute.
    pub fn zeta(&self, other: &Self) -> Result<i8, CoreError> {
        self.check_same_n(other)?;
        let anti = self.x.dot(&other.z) ^ self.z.dot(&other.x);
        Ok(if anti { -1 } else { 1 })
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, CoreError> {
        Ok(self.zeta(other)? == 1)
    }

    /// Commutator sign against the product `a * b`, computed without forming
    /// the product.
    pub fn zeta_with_product(&self, a: &Self, b: &Self) -> Result<i8, CoreError> {
        self.check_same_n(a)?;
        a.check_same_n(b)?;
        let anti = self.x.dot_xor(&a.z, &b.z) ^ self.z.dot_xor(&a.x, &b.x);
        Ok(if anti { -1 } else { 1 })
    }

    /// Length-`2n` GF(2) vector `(x | z)`.
    pub fn symplectic_bits(&self) -> BitString {
        self.x.concat(&self.z)
    }

    fn check_same_n(&self, other: &Self) -> Result<(), CoreError> {
        if self.n != other.n {
            return Err(CoreError::QubitCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Dense literal, one character per qubit: `"IZXY"`.
    pub fn dense_literal(&self) -> String {
        (0..self.n).map(|k| self.pauli_at(k).as_char()).collect()
    }

    /// Sparse literal with 1-based qubit indices: `"X2 X5"`, or `"I"` for the
    /// identity.
    pub fn sparse_literal(&self) -> String {
        if self.is_identity() {
            return String::from("I");
        }
        let mut parts = Vec::new();
        for k in 0..self.n {
            let p = self.pauli_at(k);
            if p != Pauli::I {
                parts.push(format!("{}{}", p.as_char(), k + 1));
            }
        }
        parts.join(" ")
    }

    /// Parse a dense (`"IZXY"`) or sparse (`"X2 X5"`) literal.
    ///
    /// A dense literal fixes the qubit count to its length; a sparse literal
    /// only bounds it from below, so `n` supplies the total width (inferred as
    /// the largest index when absent). The bare token `"I"` is accepted as the
    /// identity on any width.
    pub fn parse(text: &str, n: Option<usize>) -> Result<Self, CoreError> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(CoreError::Parse {
                message: String::from("empty Pauli literal"),
            });
        }
        if trimmed == "I" {
            let n = n.unwrap_or(1);
            return PauliString::identity(n);
        }
        if trimmed.chars().any(|c| c.is_ascii_digit()) {
            Self::parse_sparse(trimmed, n)
        } else {
            Self::parse_dense(trimmed, n)
        }
    }

    fn parse_dense(text: &str, n: Option<usize>) -> Result<Self, CoreError> {
        let mut paulis = Vec::new();
        for c in text.chars() {
            if c.is_whitespace() {
                continue;
            }
            let p = Pauli::from_char(c).ok_or_else(|| CoreError::Parse {
                message: format!("invalid Pauli character '{c}' in \"{text}\""),
            })?;
            paulis.push(p);
        }
        if let Some(n) = n {
            if paulis.len() != n {
                return Err(CoreError::Parse {
                    message: format!(
                        "dense literal \"{text}\" has {} qubits, expected {n}",
                        paulis.len()
                    ),
                });
            }
        }
        PauliString::from_paulis(&paulis)
    }

    fn parse_sparse(text: &str, n: Option<usize>) -> Result<Self, CoreError> {
        let mut factors: Vec<(usize, Pauli)> = Vec::new();
        for token in text.split_whitespace() {
            let mut chars = token.chars();
            let head = chars.next().unwrap();
            let p = Pauli::from_char(head).ok_or_else(|| CoreError::Parse {
                message: format!("invalid Pauli token \"{token}\""),
            })?;
            let index: usize = chars.as_str().parse().map_err(|_| CoreError::Parse {
                message: format!("invalid qubit index in token \"{token}\""),
            })?;
            if index == 0 {
                return Err(CoreError::Parse {
                    message: format!("qubit indices are 1-based, got \"{token}\""),
                });
            }
            if factors.iter().any(|(i, _)| *i == index) {
                return Err(CoreError::Parse {
                    message: format!("duplicate qubit index {index} in \"{text}\""),
                });
            }
            factors.push((index, p));
        }
        let max_index = factors.iter().map(|(i, _)| *i).max().unwrap_or(1);
        let n = n.unwrap_or(max_index);
        if max_index > n {
            return Err(CoreError::Parse {
                message: format!("qubit index {max_index} exceeds the declared {n} qubits"),
            });
        }
        let mut out = PauliString::identity(n)?;
        for (index, p) in factors {
            out.set_pauli(index - 1, p);
        }
        Ok(out)
    }
}

fn check_qubit_count(n: usize) -> Result<(), CoreError> {
    if n == 0 || n > MAX_QUBITS {
        return Err(CoreError::UnsupportedQubitCount { n });
    }
    Ok(())
}

impl Ord for PauliString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.z.cmp(&other.z))
            .then_with(|| self.x.cmp(&other.x))
    }
}

impl PartialOrd for PauliString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 16 {
            write!(f, "{}", self.dense_literal())
        } else {
            write!(f, "{}", self.sparse_literal())
        }
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dense_literal())
    }
}

impl FromStr for PauliString {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PauliString::parse(s, None)
    }
}
