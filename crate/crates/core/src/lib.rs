//! Phase-free Pauli operator algebra and twirling-set construction.
//!
//! An arbitrary noise operator can be converted into a Pauli channel by
//! conjugating it with gates drawn from a twirling set. The common choice is
//! the full Pauli set, whose generating set grows linearly with the qubit
//! count. This crate constructs a twirling set tailored to the Pauli basis of
//! the given noise, which is usually far smaller.
//!
//! Everything here is exact integer arithmetic: Pauli operators live in their
//! symplectic binary representation, commutation is a GF(2) inner product, and
//! the twirling generators fall out of a GF(2) linear solve. The crate is
//! `no_std` (with `alloc`); the dense-matrix verification oracles live in the
//! companion `twirl-sim` crate.
//!
//! The construction pipeline, starting from the Pauli basis `V` of the noise:
//!
//! 1. extract a generating set of `V` ([`generating_set`]),
//! 2. find the generators used in composition relations ([`find_vs`]),
//! 3. size the abstract group ([`choose_n`]),
//! 4. map `V` into the abstract group ([`build_mapping`]),
//! 5. compose the generator table columns ([`target_table`]),
//! 6. solve each row for a twirling generator ([`solve_generator`]),
//! 7. twirl with the span of the solved generators.
//!
//! [`TwirlPlan::from_basis`] runs all of the above and checks the resulting
//! set against the twirling condition ([`verify_condition`]).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod bits;
mod error;
mod gf2;
mod mapping;
mod pauli;
mod plan;
mod subgroup;
mod table;

pub use bits::BitString;
pub use error::CoreError;
pub use mapping::{build_mapping, choose_n, find_vs, VtoHMapping};
pub use pauli::{Pauli, PauliString, MAX_QUBITS};
pub use plan::{
    solve_generator, substitute_stabilisers, verify_condition, verify_condition_generators,
    ConditionReport, PlanDiagnostics, StabiliserSubstitution, TwirlPlan, Violation,
};
pub use subgroup::{full_pauli_baseline, generating_set, span, GeneratingSetResult};
pub use table::{generator_table, quotient_table, target_table, CommutatorTable, Label};
