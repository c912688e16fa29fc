use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::bits::BitString;
use crate::error::CoreError;
use crate::mapping::VtoHMapping;
use crate::pauli::PauliString;

/// Largest generator count for which the full `2^N x 2^N` quotient table may
/// be materialised.
const QUOTIENT_TABLE_CAP: usize = 12;

/// Row or column heading of a commutator table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Label {
    /// A concrete Pauli operator.
    Pauli(PauliString),
    /// An abstract group element, as an exponent mask over the `h` generators
    /// (`I` for the zero mask).
    Product(BitString),
    /// The `i`-th abstract row generator `q_{i+1}` (0-based).
    Row(usize),
}

impl Label {
    /// Compose two labels of the same kind, when the result is expressible.
    fn compose(&self, other: &Label) -> Option<Label> {
        match (self, other) {
            (Label::Pauli(a), Label::Pauli(b)) => a.star(b).ok().map(Label::Pauli),
            (Label::Product(a), Label::Product(b)) => Some(Label::Product(a.xor(b))),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pauli(p) => write!(f, "{p}"),
            Label::Product(mask) => {
                if mask.is_zero() {
                    write!(f, "I")
                } else {
                    let parts: Vec<String> = mask
                        .iter_ones()
                        .map(|i| format!("h{}", i + 1))
                        .collect();
                    write!(f, "{}", parts.join("*"))
                }
            }
            Label::Row(i) => write!(f, "q{}", i + 1),
        }
    }
}

/// A matrix of commutator signs with labelled rows and columns.
///
/// Signs compose along both axes: the row for `a*a'` is the entrywise product
/// of the rows for `a` and `a'`, and likewise for columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutatorTable {
    row_labels: Vec<Label>,
    col_labels: Vec<Label>,
    entries: Vec<i8>,
}

impl CommutatorTable {
    pub fn new(row_labels: Vec<Label>, col_labels: Vec<Label>, entries: Vec<i8>) -> Self {
        assert_eq!(entries.len(), row_labels.len() * col_labels.len());
        assert!(entries.iter().all(|e| *e == 1 || *e == -1));
        CommutatorTable {
            row_labels,
            col_labels,
            entries,
        }
    }

    /// Commutator table of two concrete Pauli sets.
    pub fn from_paulis(rows: &[PauliString], cols: &[PauliString]) -> Result<Self, CoreError> {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for a in rows {
            for b in cols {
                entries.push(a.zeta(b)?);
            }
        }
        Ok(CommutatorTable::new(
            rows.iter().cloned().map(Label::Pauli).collect(),
            cols.iter().cloned().map(Label::Pauli).collect(),
            entries,
        ))
    }

    pub fn n_rows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[Label] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Label] {
        &self.col_labels
    }

    pub fn entry(&self, row: usize, col: usize) -> i8 {
        self.entries[row * self.col_labels.len() + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        let w = self.col_labels.len();
        &self.entries[row * w..(row + 1) * w]
    }

    pub fn column(&self, col: usize) -> Vec<i8> {
        (0..self.n_rows()).map(|r| self.entry(r, col)).collect()
    }

    /// Check the row and column composition laws on every pair of labels
    /// whose composition is itself present in the table.
    pub fn composition_laws_hold(&self) -> bool {
        let find = |labels: &[Label], target: &Label| -> Option<usize> {
            labels.iter().position(|l| l == target)
        };
        for i in 0..self.n_rows() {
            for j in 0..self.n_rows() {
                let Some(composed) = self.row_labels[i].compose(&self.row_labels[j]) else {
                    continue;
                };
                let Some(k) = find(&self.row_labels, &composed) else {
                    continue;
                };
                for c in 0..self.n_cols() {
                    if self.entry(i, c) * self.entry(j, c) != self.entry(k, c) {
                        return false;
                    }
                }
            }
        }
        for i in 0..self.n_cols() {
            for j in 0..self.n_cols() {
                let Some(composed) = self.col_labels[i].compose(&self.col_labels[j]) else {
                    continue;
                };
                let Some(k) = find(&self.col_labels, &composed) else {
                    continue;
                };
                for r in 0..self.n_rows() {
                    if self.entry(r, i) * self.entry(r, j) != self.entry(r, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for CommutatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row_headings: Vec<String> = self.row_labels.iter().map(|l| l.to_string()).collect();
        let col_headings: Vec<String> = self.col_labels.iter().map(|l| l.to_string()).collect();
        let head_width = row_headings.iter().map(String::len).max().unwrap_or(1);
        let col_widths: Vec<usize> = col_headings.iter().map(|h| h.len().max(2)).collect();

        write!(f, "{:head_width$} |", "")?;
        for (h, w) in col_headings.iter().zip(&col_widths) {
            write!(f, " {h:>w$}")?;
        }
        writeln!(f)?;
        for (r, heading) in row_headings.iter().enumerate() {
            write!(f, "{heading:head_width$} |")?;
            for (c, w) in col_widths.iter().enumerate() {
                let sign = if self.entry(r, c) == 1 { "+1" } else { "-1" };
                write!(f, " {sign:>w$}")?;
            }
            if r + 1 < self.n_rows() {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// The `N x N` generator table: `-1` on the diagonal, `+1` elsewhere. Row `i`
/// is the sign pattern of the abstract generator `q_{i+1}` against the column
/// generators `h_j`.
pub fn generator_table(size: usize) -> CommutatorTable {
    let rows = (0..size).map(Label::Row).collect();
    let cols = (0..size)
        .map(|j| Label::Product(BitString::unit(size, j)))
        .collect();
    let mut entries = Vec::with_capacity(size * size);
    for i in 0..size {
        for j in 0..size {
            entries.push(if i == j { -1 } else { 1 });
        }
    }
    CommutatorTable::new(rows, cols, entries)
}

/// Exponent masks `0..2^size` ordered by weight then value, matching the
/// conventional column layout `I, h1, h2, .., h1*h2, ..`.
fn masks_by_weight(size: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << size).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
}

/// The full `2^N x 2^N` quotient table: entry `(q, h)` is `-1` exactly when
/// the exponent masks of `q` and `h` overlap on an odd number of generators.
/// Rows and columns are all compositions of the generator table's rows and
/// columns; every sign pattern appears exactly once on each axis.
pub fn quotient_table(size: usize) -> CommutatorTable {
    assert!(
        size <= QUOTIENT_TABLE_CAP,
        "quotient table of {size} generators would have 2^{} entries",
        2 * size
    );
    let col_masks = masks_by_weight(size);
    // Rows ordered by their sign pattern (+1 before -1 along h1, h2, ..),
    // which is ascending bit-reversed mask value.
    let mut row_masks: Vec<u64> = (0..1u64 << size).collect();
    row_masks.sort_by_key(|m| m.reverse_bits() >> (64 - size.max(1)));

    let rows: Vec<Label> = (0..row_masks.len()).map(Label::Row).collect();
    let cols: Vec<Label> = col_masks
        .iter()
        .map(|m| Label::Product(BitString::from_word(size, *m)))
        .collect();
    let mut entries = Vec::with_capacity(row_masks.len() * col_masks.len());
    for q in &row_masks {
        for h in &col_masks {
            entries.push(if (q & h).count_ones() % 2 == 1 { -1 } else { 1 });
        }
    }
    CommutatorTable::new(rows, cols, entries)
}

/// The target commutator table for the generator solve: row `i`, column `v`
/// holds `(-1)^(bit i of the mask v maps to)`. Equivalently, the generator
/// table's columns composed along the mapping.
pub fn target_table(
    mapping: &VtoHMapping,
    columns: &[PauliString],
) -> Result<CommutatorTable, CoreError> {
    let n_bits = mapping.n_bits();
    let mut entries = Vec::with_capacity(n_bits * columns.len());
    for i in 0..n_bits {
        for v in columns {
            let mask = mapping.image_of(v).ok_or(CoreError::ConstructionInvariant {
                message: format!("no image for column element {v}"),
            })?;
            entries.push(if mask.get(i) { -1 } else { 1 });
        }
    }
    Ok(CommutatorTable::new(
        (0..n_bits).map(Label::Row).collect(),
        columns.iter().cloned().map(Label::Pauli).collect(),
        entries,
    ))
}
