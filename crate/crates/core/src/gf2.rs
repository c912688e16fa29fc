//! GF(2) elimination over packed bit vectors.

use alloc::vec::Vec;

use crate::bits::BitString;
use crate::error::CoreError;

struct EchelonRow {
    vector: BitString,
    /// Which accepted basis members XOR to `vector`.
    combo: BitString,
    pivot: usize,
}

/// Incremental Gaussian eliminator that remembers, for every reduced row, the
/// combination of accepted basis members it came from.
pub(crate) struct Echelon {
    width: usize,
    combo_width: usize,
    rows: Vec<EchelonRow>,
    accepted: usize,
}

impl Echelon {
    pub(crate) fn new(width: usize, combo_width: usize) -> Self {
        Echelon {
            width,
            combo_width,
            rows: Vec::new(),
            accepted: 0,
        }
    }

    /// Reduce `vector` against the rows seen so far. Returns
    /// `Ok(combination)` if it is dependent, or `Err(position)` with the
    /// basis position it was accepted under if it is independent.
    pub(crate) fn reduce(&mut self, vector: BitString) -> Result<BitString, usize> {
        assert_eq!(vector.len(), self.width);
        let mut v = vector;
        let mut combo = BitString::zeros(self.combo_width);
        for row in &self.rows {
            if v.get(row.pivot) {
                v.xor_assign(&row.vector);
                combo.xor_assign(&row.combo);
            }
        }
        match v.first_one() {
            None => Ok(combo),
            Some(pivot) => {
                let position = self.accepted;
                combo.set(position, true);
                self.rows.push(EchelonRow {
                    vector: v,
                    combo,
                    pivot,
                });
                // Lowest pivot first keeps the reduction deterministic.
                self.rows.sort_by_key(|r| r.pivot);
                self.accepted += 1;
                Err(position)
            }
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.accepted
    }
}

pub(crate) struct LinearSolution {
    pub particular: BitString,
    pub nullspace: Vec<BitString>,
}

/// Solve `rows · u = rhs` over GF(2) for `u` of length `width`.
///
/// Pivots are chosen scanning columns left to right, so the particular
/// solution is deterministic. Returns an error when the system has a
/// dependent or contradictory row.
pub(crate) fn solve_linear(
    rows: &[BitString],
    rhs: &[bool],
    width: usize,
) -> Result<LinearSolution, CoreError> {
    assert_eq!(rows.len(), rhs.len());
    let mut mat: Vec<BitString> = rows.to_vec();
    let mut b: Vec<bool> = rhs.to_vec();
    let m = mat.len();

    let mut pivot_of_row: Vec<Option<usize>> = Vec::new();
    pivot_of_row.resize(m, None);
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut next_row = 0;

    for col in 0..width {
        let Some(found) = (next_row..m).find(|r| mat[*r].get(col)) else {
            continue;
        };
        mat.swap(next_row, found);
        b.swap(next_row, found);
        for r in 0..m {
            if r != next_row && mat[r].get(col) {
                let (head, tail) = if r < next_row {
                    let (a, c) = mat.split_at_mut(next_row);
                    (&mut a[r], &c[0])
                } else {
                    let (a, c) = mat.split_at_mut(r);
                    (&mut c[0], &a[next_row])
                };
                head.xor_assign(tail);
                b[r] ^= b[next_row];
            }
        }
        pivot_of_row[next_row] = Some(col);
        pivot_cols.push(col);
        next_row += 1;
        if next_row == m {
            break;
        }
    }

    // Any remaining row is all-zero; a set right-hand side there means the
    // original rows were dependent or contradictory.
    if (next_row..m).any(|r| b[r]) || next_row < m {
        // Dependent rows with a zero right-hand side are redundant rather than
        // contradictory, but the callers of this solver require independent
        // rows, so both cases are rejected.
        return Err(CoreError::InconsistentConstraints);
    }

    let mut particular = BitString::zeros(width);
    for r in 0..next_row {
        if b[r] {
            particular.set(pivot_of_row[r].unwrap(), true);
        }
    }

    let mut nullspace = Vec::new();
    let mut is_pivot = alloc::vec![false; width];
    for col in &pivot_cols {
        is_pivot[*col] = true;
    }
    for free in 0..width {
        if is_pivot[free] {
            continue;
        }
        let mut v = BitString::zeros(width);
        v.set(free, true);
        for r in 0..next_row {
            if mat[r].get(free) {
                v.set(pivot_of_row[r].unwrap(), true);
            }
        }
        nullspace.push(v);
    }

    Ok(LinearSolution {
        particular,
        nullspace,
    })
}
