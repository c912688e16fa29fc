use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::bits::BitString;
use crate::error::CoreError;
use crate::pauli::PauliString;
use crate::subgroup::GeneratingSetResult;

/// Injective assignment of each basis element `v` to an element of the
/// abstract group, given as an exponent mask over the group's generators.
///
/// The identity (when present) carries the zero mask, the relation
/// generators carry distinct weight-1 masks, and every composite element
/// carries the XOR of its factors' masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VtoHMapping {
    n_bits: usize,
    image: BTreeMap<PauliString, BitString>,
}

impl VtoHMapping {
    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn image_of(&self, v: &PauliString) -> Option<&BitString> {
        self.image.get(v)
    }

    /// Pairs `(v, mask)` in canonical order of `v`.
    pub fn iter(&self) -> impl Iterator<Item = (&PauliString, &BitString)> {
        self.image.iter()
    }

    /// Re-check every structural invariant; used by tests and the plan
    /// constructor's postcondition gate.
    pub fn validate(
        &self,
        v: &[PauliString],
        gs: &GeneratingSetResult,
        v_s: &[PauliString],
    ) -> Result<(), CoreError> {
        let fail = |message: alloc::string::String| CoreError::ConstructionInvariant { message };
        let mut seen = BTreeSet::new();
        for (element, mask) in &self.image {
            if mask.len() != self.n_bits {
                return Err(fail(format!("mask width mismatch for {element}")));
            }
            if !seen.insert(mask.clone()) {
                return Err(fail(format!("mask assigned twice (element {element})")));
            }
            if element.is_identity() && !mask.is_zero() {
                return Err(fail(alloc::string::String::from(
                    "identity mapped to a non-zero mask",
                )));
            }
        }
        for s in v_s {
            let mask = self.image_of(s).ok_or_else(|| fail(format!("{s} unmapped")))?;
            if mask.count_ones() != 1 {
                return Err(fail(format!("relation generator {s} not on a weight-1 mask")));
            }
        }
        let basis_set: BTreeSet<&PauliString> = gs.basis.iter().collect();
        for (i, element) in v.iter().enumerate() {
            if basis_set.contains(element) {
                continue;
            }
            let mut expected = BitString::zeros(self.n_bits);
            for k in gs.coords[i].iter_ones() {
                let mask = self
                    .image_of(&gs.basis[k])
                    .ok_or_else(|| fail(format!("basis element {} unmapped", gs.basis[k])))?;
                expected.xor_assign(mask);
            }
            if self.image_of(element) != Some(&expected) {
                return Err(fail(format!("{element} does not follow its composition relation")));
            }
        }
        Ok(())
    }
}

/// The subset of the generating set that appears in the expression of some
/// element of `V - V~`, in canonical order.
///
/// These are the generators whose images are pinned to distinct group
/// generators so that the composition relations carry over.
pub fn find_vs(v: &[PauliString], gs: &GeneratingSetResult) -> Vec<PauliString> {
    let basis_set: BTreeSet<&PauliString> = gs.basis.iter().collect();
    let mut used = BTreeSet::new();
    for (i, element) in v.iter().enumerate() {
        if basis_set.contains(element) {
            continue;
        }
        for k in gs.coords[i].iter_ones() {
            used.insert(gs.basis[k].clone());
        }
    }
    used.into_iter().collect()
}

/// Smallest generator count `N` with `2^N >= |V|` and `N >= |V_S|`.
pub fn choose_n(v_size: usize, vs_size: usize) -> usize {
    ceil_log2(v_size).max(vs_size)
}

pub(crate) fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// Map each element of `V` to an abstract group element on `n_bits`
/// generators:
///
/// (a) relation generators get distinct weight-1 masks in canonical order;
/// (b) each element of `V - V~` gets the XOR of its factors' masks (the
///     identity, as the empty product, lands on the zero mask);
/// (c) the remaining generators get the smallest unused masks in mask-value
///     order, the zero mask first when still free.
pub fn build_mapping(
    v: &[PauliString],
    gs: &GeneratingSetResult,
    v_s: &[PauliString],
    n_bits: usize,
) -> Result<VtoHMapping, CoreError> {
    if n_bits < v_s.len() || (n_bits < usize::BITS as usize && (1usize << n_bits) < v.len()) {
        return Err(CoreError::MappingCapacity {
            elements: v.len(),
            n_bits,
        });
    }

    let mut sorted_vs: Vec<&PauliString> = v_s.iter().collect();
    sorted_vs.sort();
    let mut bit_of: BTreeMap<&PauliString, usize> = BTreeMap::new();
    for (bit, s) in sorted_vs.iter().enumerate() {
        bit_of.insert(s, bit);
    }

    let mut image: BTreeMap<PauliString, BitString> = BTreeMap::new();
    let mut used: BTreeSet<BitString> = BTreeSet::new();

    // (a) relation generators on the low bits.
    for (s, bit) in &bit_of {
        let mask = BitString::unit(n_bits, *bit);
        used.insert(mask.clone());
        image.insert((*s).clone(), mask);
    }

    // (b) composite elements follow their relations.
    let basis_set: BTreeSet<&PauliString> = gs.basis.iter().collect();
    for (i, element) in v.iter().enumerate() {
        if basis_set.contains(element) || image.contains_key(element) {
            continue;
        }
        let mut mask = BitString::zeros(n_bits);
        for k in gs.coords[i].iter_ones() {
            let bit = bit_of
                .get(&gs.basis[k])
                .ok_or(CoreError::RelationOutsideVs)?;
            mask.set(*bit, !mask.get(*bit));
        }
        used.insert(mask.clone());
        image.insert(element.clone(), mask);
    }

    // (c) unconstrained generators take the smallest free masks, counting up
    // from the zero mask.
    let mut remaining: Vec<&PauliString> = gs
        .basis
        .iter()
        .filter(|b| !image.contains_key(*b))
        .collect();
    remaining.sort();
    let mut counter = BitString::zeros(n_bits);
    for element in remaining {
        while used.contains(&counter) {
            counter.increment();
        }
        used.insert(counter.clone());
        image.insert(element.clone(), counter.clone());
    }

    if image.len() != used.len() {
        return Err(CoreError::ConstructionInvariant {
            message: alloc::string::String::from("mask assignment collided"),
        });
    }
    Ok(VtoHMapping { n_bits, image })
}
