use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::CoreError;
use crate::gf2::solve_linear;
use crate::mapping::{build_mapping, choose_n, find_vs, VtoHMapping};
use crate::pauli::PauliString;
use crate::subgroup::{generating_set, span};
use crate::table::{target_table, CommutatorTable};

/// Beyond this solution-space dimension the solver returns the particular
/// solution instead of enumerating the coset for a minimum-weight one.
const COSET_ENUMERATION_CAP: usize = 16;

/// Size counters carried alongside a constructed plan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanDiagnostics {
    /// `|V|`, the Pauli basis size.
    pub v_size: usize,
    /// `|V~|`, the generating set size.
    pub v_tilde_size: usize,
    /// `|V_S|`, the relation generator count.
    pub v_s_size: usize,
    /// `|W~|`, the twirling generator count.
    pub w_tilde_size: usize,
    /// `|W| = 2^|W~|`, the full twirling set size.
    pub w_size: u128,
    /// Generator count of the full-Pauli baseline, `2n`.
    pub baseline_generators: usize,
}

/// Output of the construction pipeline: the Pauli basis, its generating
/// structure, the abstract-group mapping, the solved twirling generators and
/// the size diagnostics.
#[derive(Clone, Debug)]
pub struct TwirlPlan {
    /// Pauli basis of the noise, in canonical order.
    pub v: Vec<PauliString>,
    /// Generating set of `v`, in extraction order.
    pub v_tilde: Vec<PauliString>,
    /// Generators used in composition relations, in canonical order.
    pub v_s: Vec<PauliString>,
    /// Number of abstract group generators.
    pub n_bits: usize,
    /// Assignment of `v` into the abstract group.
    pub mapping: VtoHMapping,
    /// Sign pattern each twirling generator must realise against `v_tilde`.
    pub target: CommutatorTable,
    /// The solved twirling generators; twirl with their span.
    pub w_tilde: Vec<PauliString>,
    pub diagnostics: PlanDiagnostics,
}

impl TwirlPlan {
    /// Run the construction from an already-extracted Pauli basis.
    ///
    /// The input is treated as a set: duplicates collapse and canonical order
    /// is imposed. The returned generators are checked against the twirling
    /// condition before the plan is handed out.
    pub fn from_basis(basis: &[PauliString]) -> Result<Self, CoreError> {
        if basis.is_empty() {
            return Err(CoreError::EmptyInput);
        }
        let mut v: Vec<PauliString> = basis.to_vec();
        v.sort();
        v.dedup();
        let n = v[0].n();
        for e in &v {
            if e.n() != n {
                return Err(CoreError::QubitCountMismatch {
                    left: n,
                    right: e.n(),
                });
            }
        }

        let gs = generating_set(&v)?;
        let v_s = find_vs(&v, &gs);
        let n_bits = choose_n(v.len(), v_s.len());
        let mapping = build_mapping(&v, &gs, &v_s, n_bits)?;
        mapping.validate(&v, &gs, &v_s)?;
        let target = target_table(&mapping, &gs.basis)?;

        let mut w_tilde = Vec::with_capacity(n_bits);
        for row in 0..n_bits {
            let constraints: Vec<(PauliString, i8)> = gs
                .basis
                .iter()
                .cloned()
                .zip(target.row(row).iter().copied())
                .collect();
            w_tilde.push(solve_generator(&constraints, n)?);
        }

        let diagnostics = PlanDiagnostics {
            v_size: v.len(),
            v_tilde_size: gs.basis.len(),
            v_s_size: v_s.len(),
            w_tilde_size: w_tilde.len(),
            w_size: 1u128
                .checked_shl(w_tilde.len() as u32)
                .ok_or(CoreError::ConstructionInvariant {
                    message: String::from("twirling set size overflows"),
                })?,
            baseline_generators: 2 * n,
        };

        let plan = TwirlPlan {
            v,
            v_tilde: gs.basis,
            v_s,
            n_bits,
            mapping,
            target,
            w_tilde,
            diagnostics,
        };

        // Postcondition gate: the span of the solved generators must satisfy
        // the twirling condition on every pair of basis elements.
        let check = verify_condition_generators(&plan.w_tilde, &plan.v)?;
        if !check.satisfied {
            return Err(CoreError::ConstructionInvariant {
                message: format!(
                    "solved generators violate the twirling condition on {} pairs",
                    check.violations.len()
                ),
            });
        }
        Ok(plan)
    }

    pub fn n(&self) -> usize {
        self.v[0].n()
    }

    /// The full twirling set, `span(w_tilde)`.
    pub fn twirl_set(&self) -> Result<Vec<PauliString>, CoreError> {
        span(self.n(), &self.w_tilde)
    }
}

impl fmt::Display for TwirlPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |set: &[PauliString]| -> String {
            let parts: Vec<String> = set.iter().map(|p| format!("{p}")).collect();
            if parts.is_empty() {
                String::from("(empty)")
            } else {
                parts.join(", ")
            }
        };
        writeln!(f, "pauli basis V      : {}", join(&self.v))?;
        writeln!(f, "generating set     : {}", join(&self.v_tilde))?;
        writeln!(f, "relation generators: {}", join(&self.v_s))?;
        writeln!(f, "group generators N : {}", self.n_bits)?;
        writeln!(f, "mapping:")?;
        for (element, mask) in self.mapping.iter() {
            writeln!(
                f,
                "  {element} -> {}",
                crate::table::Label::Product(mask.clone())
            )?;
        }
        if self.target.n_rows() > 0 {
            writeln!(f, "target table:")?;
            writeln!(f, "{}", self.target)?;
        }
        writeln!(f, "twirling generators: {}", join(&self.w_tilde))?;
        let d = &self.diagnostics;
        write!(
            f,
            "sizes: |V|={} |V~|={} |V_S|={} |W~|={} |W|={} (baseline generators: {})",
            d.v_size, d.v_tilde_size, d.v_s_size, d.w_tilde_size, d.w_size, d.baseline_generators
        )
    }
}

/// Find a Pauli `w` with the requested commutator sign against every
/// constraint operator.
///
/// The constraints translate to a linear system over the `2n` symplectic
/// unknowns of `w`; independent constraint operators make it solvable. Among
/// the solution coset the minimum-weight operator is returned (ties broken by
/// canonical order) as long as the coset is small enough to enumerate,
/// otherwise the deterministic particular solution.
pub fn solve_generator(
    constraints: &[(PauliString, i8)],
    n: usize,
) -> Result<PauliString, CoreError> {
    let mut rows = Vec::with_capacity(constraints.len());
    let mut rhs = Vec::with_capacity(constraints.len());
    for (p, sign) in constraints {
        if p.n() != n {
            return Err(CoreError::QubitCountMismatch {
                left: n,
                right: p.n(),
            });
        }
        if *sign != 1 && *sign != -1 {
            return Err(CoreError::Parse {
                message: format!("target sign must be +1 or -1, got {sign}"),
            });
        }
        // zeta(w, p) = (-1)^(w.x·p.z + w.z·p.x): the row is (p.z | p.x)
        // against the unknown (w.x | w.z).
        rows.push(p.z_bits().concat(p.x_bits()));
        rhs.push(*sign == -1);
    }

    let solution = solve_linear(&rows, &rhs, 2 * n)?;
    let particular = PauliString::from_symplectic(n, &solution.particular)?;
    if solution.nullspace.len() > COSET_ENUMERATION_CAP {
        return Ok(particular);
    }

    let mut best = particular;
    let mut current = solution.particular;
    let count = 1usize << solution.nullspace.len();
    // Gray-code walk over the coset: one XOR per step.
    for k in 1..count {
        let flip = k.trailing_zeros() as usize;
        current.xor_assign(&solution.nullspace[flip]);
        let candidate = PauliString::from_symplectic(n, &current)?;
        let better = match candidate.weight().cmp(&best.weight()) {
            core::cmp::Ordering::Less => true,
            core::cmp::Ordering::Equal => candidate < best,
            core::cmp::Ordering::Greater => false,
        };
        if better {
            best = candidate;
        }
    }
    Ok(best)
}

/// A basis pair on which the twirling condition fails, and the offending sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub left: PauliString,
    pub right: PauliString,
    pub product: PauliString,
    pub sum: i64,
}

/// Outcome of checking the twirling condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionReport {
    pub satisfied: bool,
    pub violations: Vec<Violation>,
}

/// Check the twirling condition literally: for every unordered pair
/// `v != v'` of basis elements, the commutator signs of `v * v'` against the
/// whole twirling set must sum to zero.
pub fn verify_condition(
    w_set: &[PauliString],
    v_set: &[PauliString],
) -> Result<ConditionReport, CoreError> {
    let mut violations = Vec::new();
    for (i, a) in v_set.iter().enumerate() {
        for b in v_set.iter().skip(i + 1) {
            if a == b {
                continue;
            }
            let mut sum: i64 = 0;
            for w in w_set {
                sum += w.zeta_with_product(a, b)? as i64;
            }
            if sum != 0 {
                violations.push(Violation {
                    left: a.clone(),
                    right: b.clone(),
                    product: a.star(b)?,
                    sum,
                });
            }
        }
    }
    Ok(ConditionReport {
        satisfied: violations.is_empty(),
        violations,
    })
}

/// Check the twirling condition for `W = span(w_tilde)` without enumerating
/// the span: the signs over a subgroup sum to zero exactly when some
/// generator anticommutes with `v * v'`, and to `|W|` otherwise.
pub fn verify_condition_generators(
    w_tilde: &[PauliString],
    v_set: &[PauliString],
) -> Result<ConditionReport, CoreError> {
    let w_size: i64 = 1i64 << w_tilde.len().min(62);
    let mut violations = Vec::new();
    for (i, a) in v_set.iter().enumerate() {
        for b in v_set.iter().skip(i + 1) {
            if a == b {
                continue;
            }
            let mut all_commute = true;
            for w in w_tilde {
                if w.zeta_with_product(a, b)? == -1 {
                    all_commute = false;
                    break;
                }
            }
            if all_commute {
                violations.push(Violation {
                    left: a.clone(),
                    right: b.clone(),
                    product: a.star(b)?,
                    sum: w_size,
                });
            }
        }
    }
    Ok(ConditionReport {
        satisfied: violations.is_empty(),
        violations,
    })
}

/// Result of absorbing measured stabilisers into the twirling generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabiliserSubstitution {
    /// Generators still requiring explicit twirling gates.
    pub active: Vec<PauliString>,
    /// Generators replaced by a stabiliser check, in plan order.
    pub absorbed: Vec<PauliString>,
    /// Active generators that lie in the span of the stabilisers; flagged for
    /// information only, they are not removed.
    pub span_members: Vec<PauliString>,
}

/// Drop every twirling generator that equals a measured stabiliser: the
/// stabiliser check with a discarded outcome already performs that one-gate
/// twirl. Only exact matches are removed; generators that are merely products
/// of stabilisers are reported but kept.
pub fn substitute_stabilisers(
    plan: &TwirlPlan,
    stabilisers: &[PauliString],
) -> Result<StabiliserSubstitution, CoreError> {
    let n = plan.n();
    for s in stabilisers {
        if s.n() != n {
            return Err(CoreError::QubitCountMismatch {
                left: n,
                right: s.n(),
            });
        }
    }
    for (i, a) in stabilisers.iter().enumerate() {
        for b in stabilisers.iter().skip(i + 1) {
            if a.zeta(b)? == -1 {
                return Err(CoreError::NonCommutingStabilisers);
            }
        }
    }

    let stab_set: BTreeSet<&PauliString> = stabilisers.iter().collect();
    let mut active = Vec::new();
    let mut absorbed = Vec::new();
    for w in &plan.w_tilde {
        if stab_set.contains(w) {
            absorbed.push(w.clone());
        } else {
            active.push(w.clone());
        }
    }

    let mut span_members = Vec::new();
    if !stabilisers.is_empty() {
        let stab_span: BTreeSet<PauliString> = span(n, &reduce(stabilisers)?)?.into_iter().collect();
        for w in &active {
            if stab_span.contains(w) {
                span_members.push(w.clone());
            }
        }
    }
    Ok(StabiliserSubstitution {
        active,
        absorbed,
        span_members,
    })
}

/// Reduce a possibly dependent set of Paulis to an independent one.
fn reduce(elements: &[PauliString]) -> Result<Vec<PauliString>, CoreError> {
    Ok(generating_set(elements)?.basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn p(text: &str) -> PauliString {
        text.parse().unwrap()
    }

    fn pn(text: &str, n: usize) -> PauliString {
        PauliString::parse(text, Some(n)).unwrap()
    }

    #[test]
    fn solve_unique_two_qubit_row() {
        let constraints = vec![
            (p("IX"), 1),
            (p("IZ"), -1),
            (p("YX"), 1),
            (p("ZX"), 1),
        ];
        assert_eq!(solve_generator(&constraints, 2).unwrap(), p("IX"));
    }

    #[test]
    fn solve_eight_qubit_row_picks_minimum_weight() {
        let mut constraints = Vec::new();
        for k in 1..=8 {
            let sign = if [2, 5, 6, 8].contains(&k) { -1 } else { 1 };
            constraints.push((pn(&alloc::format!("Z{k}"), 8), sign));
        }
        let w = solve_generator(&constraints, 8).unwrap();
        assert_eq!(w, pn("X2 X5 X6 X8", 8));
    }

    #[test]
    fn solve_with_no_constraints_gives_identity() {
        assert_eq!(
            solve_generator(&[], 3).unwrap(),
            PauliString::identity(3).unwrap()
        );
    }

    #[test]
    fn solve_rejects_contradictory_constraints() {
        let constraints = vec![(p("X"), 1), (p("X"), -1)];
        assert!(matches!(
            solve_generator(&constraints, 1),
            Err(CoreError::InconsistentConstraints)
        ));
    }

    #[test]
    fn solve_respects_every_sign() {
        let constraints = vec![(p("XX"), -1), (p("ZI"), -1), (p("IZ"), 1)];
        let w = solve_generator(&constraints, 2).unwrap();
        for (v, sign) in &constraints {
            assert_eq!(w.zeta(v).unwrap(), *sign);
        }
    }

    #[test]
    fn worked_example_plan() {
        let v = vec![p("IX"), p("IZ"), p("YX"), p("ZX"), p("YY")];
        let plan = TwirlPlan::from_basis(&v).unwrap();
        assert_eq!(plan.n_bits, 3);
        assert_eq!(plan.diagnostics.w_tilde_size, 3);
        assert_eq!(plan.diagnostics.w_size, 8);
        assert_eq!(plan.diagnostics.v_size, 5);
        assert_eq!(plan.diagnostics.v_tilde_size, 4);
        assert_eq!(plan.diagnostics.v_s_size, 2);
        // The unique minimum-weight solution set for this basis.
        assert_eq!(plan.w_tilde, vec![p("IX"), p("ZI"), p("YI")]);
        assert_eq!(plan.twirl_set().unwrap().len(), 8);
    }

    #[test]
    fn worked_example_solved_table_matches_target() {
        let v = vec![p("IX"), p("IZ"), p("YX"), p("ZX"), p("YY")];
        let plan = TwirlPlan::from_basis(&v).unwrap();
        let recomputed =
            CommutatorTable::from_paulis(&plan.w_tilde, &plan.v_tilde).unwrap();
        for r in 0..plan.target.n_rows() {
            assert_eq!(recomputed.row(r), plan.target.row(r));
        }
    }

    #[test]
    fn global_field_plan_is_logarithmic() {
        let v: Vec<PauliString> = (1..=8).map(|k| pn(&alloc::format!("Z{k}"), 8)).collect();
        let plan = TwirlPlan::from_basis(&v).unwrap();
        assert_eq!(plan.diagnostics.w_tilde_size, 3);
        assert_eq!(plan.diagnostics.baseline_generators, 16);
        assert!(plan.v_s.is_empty());
        for w in &plan.w_tilde {
            assert_eq!(w.weight(), 4);
        }
    }

    #[test]
    fn singleton_basis_needs_no_twirling() {
        let plan = TwirlPlan::from_basis(&[p("XZ")]).unwrap();
        assert!(plan.w_tilde.is_empty());
        assert_eq!(plan.diagnostics.w_size, 1);
        assert_eq!(plan.twirl_set().unwrap(), vec![p("II")]);
    }

    #[test]
    fn empty_basis_is_rejected() {
        assert!(matches!(
            TwirlPlan::from_basis(&[]),
            Err(CoreError::EmptyInput)
        ));
    }

    #[test]
    fn condition_holds_for_worked_example_span() {
        let v = vec![p("IX"), p("IZ"), p("YX"), p("ZX"), p("YY")];
        let w = span(2, &[p("IX"), p("ZI"), p("YI")]).unwrap();
        let report = verify_condition(&w, &v).unwrap();
        assert!(report.satisfied);
        assert!(report.violations.is_empty());
    }

    #[test]
    fn condition_fails_for_identity_twirl() {
        let w = vec![p("I")];
        let v = vec![p("X"), p("Z")];
        let report = verify_condition(&w, &v).unwrap();
        assert!(!report.satisfied);
        assert_eq!(report.violations.len(), 1);
        let violation = &report.violations[0];
        assert_eq!(violation.product, p("Y"));
        // Every member of W commutes with Y here, so the sum is |W|.
        assert_eq!(violation.sum, 1);
    }

    #[test]
    fn generator_check_agrees_with_literal_check() {
        let v = vec![p("IX"), p("IZ"), p("YX"), p("ZX"), p("YY")];
        let w_tilde = vec![p("IX"), p("ZI"), p("YI")];
        let w = span(2, &w_tilde).unwrap();
        let literal = verify_condition(&w, &v).unwrap();
        let quick = verify_condition_generators(&w_tilde, &v).unwrap();
        assert_eq!(literal.satisfied, quick.satisfied);

        let bad = vec![p("ZI")];
        let literal = verify_condition(&span(2, &bad).unwrap(), &v).unwrap();
        let quick = verify_condition_generators(&bad, &v).unwrap();
        assert!(!literal.satisfied);
        assert!(!quick.satisfied);
        let lit_pairs: Vec<_> = literal
            .violations
            .iter()
            .map(|x| (x.left.clone(), x.right.clone()))
            .collect();
        let gen_pairs: Vec<_> = quick
            .violations
            .iter()
            .map(|x| (x.left.clone(), x.right.clone()))
            .collect();
        assert_eq!(lit_pairs, gen_pairs);
    }

    #[test]
    fn stabiliser_substitution_drops_exact_matches() {
        let plan = TwirlPlan::from_basis(&[p("I"), p("X"), p("Y"), p("Z")]).unwrap();
        let mut generators = plan.w_tilde.clone();
        generators.sort();
        assert_eq!(generators, vec![p("X"), p("Z")]);
        let sub = substitute_stabilisers(&plan, &[p("Z")]).unwrap();
        assert_eq!(sub.active, vec![p("X")]);
        assert_eq!(sub.absorbed, vec![p("Z")]);
        assert!(sub.span_members.is_empty());
    }

    #[test]
    fn stabiliser_substitution_without_matches_keeps_plan() {
        let plan = TwirlPlan::from_basis(&[p("IX"), p("IZ"), p("YX"), p("ZX"), p("YY")]).unwrap();
        let sub = substitute_stabilisers(&plan, &[p("ZZ")]).unwrap();
        assert_eq!(sub.active, plan.w_tilde);
        assert!(sub.absorbed.is_empty());
    }

    fn field_noise_plan(n: usize) -> TwirlPlan {
        let v: Vec<PauliString> = (1..=n).map(|k| pn(&alloc::format!("Z{k}"), n)).collect();
        TwirlPlan::from_basis(&v).unwrap()
    }

    #[test]
    fn stabiliser_substitution_can_absorb_everything() {
        let plan = field_noise_plan(4);
        assert_eq!(plan.w_tilde, vec![pn("X1 X3", 4), pn("X1 X2", 4)]);
        let sub = substitute_stabilisers(&plan, &plan.w_tilde.clone()).unwrap();
        assert!(sub.active.is_empty());
        assert_eq!(sub.absorbed, plan.w_tilde);
    }

    #[test]
    fn stabiliser_substitution_flags_span_membership() {
        let plan = field_noise_plan(4);
        let stabs = vec![pn("X1", 4), pn("X3", 4)];
        let sub = substitute_stabilisers(&plan, &stabs).unwrap();
        // X1*X3 is a product of measured stabilisers but equals none of them:
        // it stays active and is only flagged.
        assert_eq!(sub.active, plan.w_tilde);
        assert!(sub.absorbed.is_empty());
        assert_eq!(sub.span_members, vec![pn("X1 X3", 4)]);
    }

    #[test]
    fn non_commuting_stabilisers_are_rejected() {
        let plan = TwirlPlan::from_basis(&[p("I"), p("X"), p("Y"), p("Z")]).unwrap();
        assert!(matches!(
            substitute_stabilisers(&plan, &[p("X"), p("Z")]),
            Err(CoreError::NonCommutingStabilisers)
        ));
    }

    #[test]
    fn plan_display_lists_the_pipeline() {
        let plan = TwirlPlan::from_basis(&[p("IX"), p("IZ"), p("YX"), p("ZX"), p("YY")]).unwrap();
        let text = alloc::format!("{plan}");
        assert!(text.contains("pauli basis"));
        assert!(text.contains("IX, ZI, YI"));
        assert!(text.contains("|W|=8"));
    }
}
