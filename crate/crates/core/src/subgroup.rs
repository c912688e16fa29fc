use alloc::vec::Vec;

use crate::bits::BitString;
use crate::error::CoreError;
use crate::gf2::Echelon;
use crate::pauli::{Pauli, PauliString};

/// Cap on the number of generators [`span`] will enumerate.
const SPAN_GENERATOR_CAP: usize = 24;

/// A generating set extracted from a list of Paulis, plus the expression of
/// every input element over that set.
///
/// `basis` is a subset of the input, GF(2)-independent as symplectic vectors.
/// `coords[i]` selects the basis elements whose `*`-product reproduces input
/// `i`; the identity is the empty product.
#[derive(Clone, Debug)]
pub struct GeneratingSetResult {
    pub basis: Vec<PauliString>,
    pub coords: Vec<BitString>,
}

impl GeneratingSetResult {
    /// Re-multiply the basis elements selected by `coords` for input `i`.
    pub fn reproduce(&self, i: usize) -> Result<PauliString, CoreError> {
        let n = self
            .basis
            .first()
            .map(PauliString::n)
            .ok_or(CoreError::EmptyInput)?;
        let mut acc = PauliString::identity(n)?;
        for k in self.coords[i].iter_ones() {
            acc = acc.star(&self.basis[k])?;
        }
        Ok(acc)
    }
}

/// Extract a generating set by GF(2) elimination over the concatenated
/// `(x, z)` vectors, scanning the input in order: the first element
/// independent of everything accepted so far joins the basis.
pub fn generating_set(elements: &[PauliString]) -> Result<GeneratingSetResult, CoreError> {
    let Some(first) = elements.first() else {
        return Ok(GeneratingSetResult {
            basis: Vec::new(),
            coords: Vec::new(),
        });
    };
    let n = first.n();
    for e in elements {
        if e.n() != n {
            return Err(CoreError::QubitCountMismatch {
                left: n,
                right: e.n(),
            });
        }
    }

    let mut echelon = Echelon::new(2 * n, elements.len());
    let mut basis = Vec::new();
    let mut raw_coords = Vec::new();
    for e in elements {
        match echelon.reduce(e.symplectic_bits()) {
            Ok(combo) => raw_coords.push(combo),
            Err(position) => {
                debug_assert_eq!(position, basis.len());
                basis.push(e.clone());
                raw_coords.push(BitString::unit(elements.len(), position));
            }
        }
    }
    debug_assert_eq!(echelon.rank(), basis.len());
    // Combination vectors were sized for the worst case; trim to the basis.
    let coords = raw_coords
        .iter()
        .map(|c| c.slice(0, basis.len().max(1).min(c.len())))
        .map(|c| {
            if basis.is_empty() {
                BitString::zeros(0)
            } else {
                c
            }
        })
        .collect();
    Ok(GeneratingSetResult { basis, coords })
}

/// All `2^k` `*`-products of `k` generators, identity included, in canonical
/// order. Duplicate products collapse, so the result has `2^rank` elements.
pub fn span(n: usize, generators: &[PauliString]) -> Result<Vec<PauliString>, CoreError> {
    for g in generators {
        if g.n() != n {
            return Err(CoreError::QubitCountMismatch {
                left: n,
                right: g.n(),
            });
        }
    }
    if generators.len() > SPAN_GENERATOR_CAP {
        return Err(CoreError::SpanTooLarge {
            generators: generators.len(),
            max: SPAN_GENERATOR_CAP,
        });
    }
    let mut out = Vec::with_capacity(1 << generators.len());
    out.push(PauliString::identity(n)?);
    for g in generators {
        let mut with_g = Vec::with_capacity(out.len());
        for e in &out {
            with_g.push(e.star(g)?);
        }
        out.extend(with_g);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The `2n` single-qubit generators `{X_k, Z_k}` of the full Pauli set; their
/// span is all of `G`, size `4^n`.
pub fn full_pauli_baseline(n: usize) -> Result<Vec<PauliString>, CoreError> {
    let mut out = Vec::with_capacity(2 * n);
    for k in 0..n {
        out.push(PauliString::single(n, k, Pauli::X)?);
    }
    for k in 0..n {
        out.push(PauliString::single(n, k, Pauli::Z)?);
    }
    Ok(out)
}
