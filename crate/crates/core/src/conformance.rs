//! Fault models, emptiness with shortest witnesses, and conformance verdicts.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::algebra::{complement, intersect, union};
use crate::error::Error;
use crate::grammar::Analysis;
use crate::oracle;
use crate::vpa::machine::Machine;
use crate::vpa::{Transition, Vpa};
use crate::vpts::{Iovpts, Vpts};

/// Sizes behind a fault model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Provenance {
    pub spec_states: usize,
    pub desired_states: usize,
    pub forbidden_states: usize,
    /// `(n_S·n_F + 1)(n_S·n_D + n_D + 1)`.
    pub bound: usize,
    /// States of the suite before unreachable ones were dropped.
    pub unpruned_states: usize,
}

/// The automaton of `(D ∩ ¬otr(S)) ∪ (F ∩ otr(S))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaultModel {
    pub suite: Vpa,
    pub provenance: Provenance,
}

pub fn suite_bound(spec_states: usize, desired_states: usize, forbidden_states: usize) -> usize {
    let (s, d, f) = (spec_states, desired_states, forbidden_states);
    (s * f + 1) * (s * d + d + 1)
}

fn invalid(operand: &str, violations: Vec<crate::vpa::Violation>) -> Result<(), Error> {
    if violations.is_empty() {
        return Ok(());
    }
    Err(Error::Invalid {
        operand: operand.to_string(),
        violations: violations.iter().map(ToString::to_string).collect(),
    })
}

fn deterministic_vpa(operand: &str, a: &Vpa) -> Result<(), Error> {
    match a.determinism_violation() {
        None => Ok(()),
        Some(v) => Err(Error::NotDeterministic {
            operand: operand.to_string(),
            reason: v.to_string(),
        }),
    }
}

fn deterministic_vpts(operand: &str, v: &Vpts) -> Result<(), Error> {
    if let Some(t) = v.transitions.iter().find(|t| t.is_silent()) {
        return Err(Error::NotDeterministic {
            operand: operand.to_string(),
            reason: format!("internal move {}", t.describe("ς")),
        });
    }
    deterministic_vpa(operand, &v.induced_vpa())
}

fn same_alphabet(
    operand: &str,
    reference: &Vpts,
    a: &crate::alphabet::PartitionedAlphabet,
) -> Result<(), Error> {
    if &reference.alphabet == a {
        return Ok(());
    }
    Err(Error::AlphabetMismatch(format!(
        "{operand} uses {{{}}} but the specification uses {{{}}}",
        a.symbols().join(","),
        reference.alphabet.symbols().join(",")
    )))
}

pub fn build_fault_model(
    spec: &Iovpts,
    desired: &Vpa,
    forbidden: &Vpa,
) -> Result<FaultModel, Error> {
    invalid("specification", spec.validate())?;
    invalid("desired", desired.validate())?;
    invalid("forbidden", forbidden.validate())?;
    same_alphabet("desired", &spec.vpts, &desired.alphabet)?;
    same_alphabet("forbidden", &spec.vpts, &forbidden.alphabet)?;
    deterministic_vpts("specification", &spec.vpts)?;
    deterministic_vpa("desired", desired)?;
    deterministic_vpa("forbidden", forbidden)?;

    let a1 = spec.vpts.contract().induced_vpa();
    let b1 = complement(&a1)?;
    let a2 = intersect(forbidden, &a1)?;
    let b2 = intersect(desired, &b1)?;
    let full = union(&a2, &b2)?;
    let provenance = Provenance {
        spec_states: spec.vpts.states.len(),
        desired_states: desired.states.len(),
        forbidden_states: forbidden.states.len(),
        bound: suite_bound(
            spec.vpts.states.len(),
            desired.states.len(),
            forbidden.states.len(),
        ),
        unpruned_states: full.states.len(),
    };
    Ok(FaultModel {
        suite: full.trim(),
        provenance,
    })
}

/// Outcome of an emptiness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Emptiness {
    Empty,
    /// A shortest accepted word, least in symbol order among those.
    NonEmpty(Vec<String>),
}

/// Shortest accepting run of `a`, if any.
pub fn shortest_accepting_run(a: &Vpa) -> Option<Vec<Transition>> {
    let m = Machine::compile(a);
    let analysis = Analysis::until(&m, |s| m.finals[s]);
    let goal = *analysis.nodes().last()?;
    if !m.finals[goal.0] {
        return None;
    }
    let run = analysis.run_to(goal)?;
    Some(analysis.transitions(&run))
}

pub fn is_empty_with_witness(a: &Vpa) -> Emptiness {
    match shortest_accepting_run(a) {
        None => Emptiness::Empty,
        Some(run) => Emptiness::NonEmpty(
            run.iter()
                .filter_map(|t| t.label.symbol().map(str::to_string))
                .collect(),
        ),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Clause {
    /// The witness is desired but the specification cannot produce it.
    DesiredMissing,
    /// The witness is forbidden yet the specification produces it.
    ForbiddenPresent,
}

/// Where the witness lies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Memberships {
    pub desired: bool,
    pub forbidden: bool,
    pub spec_trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Timings {
    pub fault_model_micros: u128,
    pub check_micros: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<Vec<String>>,
    pub clause: Option<Clause>,
    pub suite_states: usize,
    pub bound: usize,
    pub timings: Timings,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub memberships: Option<Memberships>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

pub fn check_conformance(
    iut: &Vpts,
    spec: &Iovpts,
    desired: &Vpa,
    forbidden: &Vpa,
) -> Result<Verdict, Error> {
    let started = Instant::now();
    let model = build_fault_model(spec, desired, forbidden)?;
    let built = started.elapsed();

    invalid("implementation", iut.validate_structure())?;
    same_alphabet("implementation", &spec.vpts, &iut.alphabet)?;
    deterministic_vpts("implementation", iut)?;

    let checking = Instant::now();
    let joint = intersect(&iut.contract().induced_vpa(), &model.suite)?.trim();
    let witness = match is_empty_with_witness(&joint) {
        Emptiness::Empty => None,
        Emptiness::NonEmpty(w) => Some(w),
    };
    let memberships = witness.as_ref().map(|w| Memberships {
        desired: desired.accepts(w).unwrap_or(false),
        forbidden: forbidden.accepts(w).unwrap_or(false),
        spec_trace: spec.vpts.has_observable_trace(w).unwrap_or(false),
    });
    let clause = memberships.map(|m| {
        if m.desired && !m.spec_trace {
            Clause::DesiredMissing
        } else {
            Clause::ForbiddenPresent
        }
    });
    let timings = Timings {
        fault_model_micros: built.as_micros(),
        check_micros: checking.elapsed().as_micros(),
    };
    Ok(Verdict {
        outcome: if witness.is_some() {
            Outcome::Fail
        } else {
            Outcome::Pass
        },
        witness,
        clause,
        suite_states: model.suite.states.len(),
        bound: model.provenance.bound,
        timings,
        memberships,
    })
}

/// Bounded adherence probe: no observable trace of `iut` of at most `max_len`
/// symbols is accepted by `suite`.
pub fn passes_suite(iut: &Vpts, suite: &Vpa, max_len: usize) -> bool {
    oracle::enumerate_otr(iut, max_len)
        .words
        .iter()
        .all(|w| !oracle::accepts(suite, w))
}

/// Words of `otr(iut) ∩ L(suite)` up to `max_len`, shortest first.
pub fn bounded_failures(iut: &Vpts, suite: &Vpa, max_len: usize) -> Vec<Vec<String>> {
    let hits: BTreeSet<Vec<String>> = oracle::enumerate_otr(iut, max_len)
        .words
        .into_iter()
        .filter(|w| oracle::accepts(suite, w))
        .collect();
    let mut v: Vec<_> = hits.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn w(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn emptiness_of_initial_final() {
        assert_eq!(
            is_empty_with_witness(&samples::anbn()),
            Emptiness::NonEmpty(vec![])
        );
    }

    #[test]
    fn shortest_nonempty_anbn() {
        let mut a = samples::anbn();
        a.finals = BTreeSet::from(["sf".to_string()]);
        assert_eq!(is_empty_with_witness(&a), Emptiness::NonEmpty(w("ab")));
    }

    #[test]
    fn unreachable_finals_are_empty() {
        let mut a = samples::anbn();
        a.states.insert("z".into());
        a.finals = BTreeSet::from(["z".to_string()]);
        assert_eq!(is_empty_with_witness(&a), Emptiness::Empty);
    }

    #[test]
    fn final_behind_unmatched_pop_is_empty() {
        let mut a = samples::anbn();
        a.states.insert("z".into());
        a.transitions.insert(Transition::pop("s0", "b", "A", "z"));
        a.finals = BTreeSet::from(["z".to_string()]);
        assert_eq!(is_empty_with_witness(&a), Emptiness::Empty);
    }

    #[test]
    fn desired_side_of_first_example() {
        let s = samples::pushdown_spec();
        let m = build_fault_model(&s, &samples::desired_anbnx(), &samples::forbidden_extra_b())
            .unwrap();
        assert!(m.suite.accepts(&w("aabbx")).unwrap());
        assert!(m.suite.is_deterministic());
        assert!(!m.suite.has_silent_moves());
        assert!(m.suite.states.len() <= m.provenance.bound);
        assert_eq!(m.provenance.bound, suite_bound(3, 3, 3));
    }

    #[test]
    fn forbidden_side_of_first_example_is_empty() {
        let s = samples::pushdown_spec();
        let none = samples::nothing(s.vpts.alphabet.clone());
        let m = build_fault_model(&s, &none, &samples::forbidden_extra_b()).unwrap();
        assert_eq!(is_empty_with_witness(&m.suite), Emptiness::Empty);
    }

    #[test]
    fn empty_d_and_f_give_empty_suite() {
        let s = samples::pushdown_spec();
        let none = samples::nothing(s.vpts.alphabet.clone());
        let m = build_fault_model(&s, &none, &none).unwrap();
        assert_eq!(is_empty_with_witness(&m.suite), Emptiness::Empty);
        assert!(passes_suite(&samples::faulty_impl().vpts, &m.suite, 5));
    }

    #[test]
    fn faulty_implementation_fails() {
        let v = check_conformance(
            &samples::faulty_impl().vpts,
            &samples::pushdown_spec(),
            &samples::desired_anbnx(),
            &samples::forbidden_extra_b(),
        )
        .unwrap();
        assert_eq!(v.outcome, Outcome::Fail);
        assert_eq!(v.witness, Some(w("aabbx")));
        assert_eq!(v.clause, Some(Clause::DesiredMissing));
    }

    #[test]
    fn faithful_implementation_passes() {
        let v = check_conformance(
            &samples::faithful_impl().vpts,
            &samples::pushdown_spec(),
            &samples::desired_anbnx(),
            &samples::forbidden_extra_b(),
        )
        .unwrap();
        assert!(v.passed());
        assert_eq!(v.witness, None);
    }

    #[test]
    fn forbidden_traces_are_caught() {
        let s = samples::pushdown_spec();
        let none = samples::nothing(s.vpts.alphabet.clone());
        let v = check_conformance(
            &samples::faithful_impl().vpts,
            &s,
            &none,
            &samples::forbidden_a_plus_x(),
        )
        .unwrap();
        assert_eq!(v.witness, Some(w("ax")));
        assert_eq!(v.clause, Some(Clause::ForbiddenPresent));
        let m = build_fault_model(&s, &none, &samples::forbidden_a_plus_x()).unwrap();
        assert!(!passes_suite(&samples::faithful_impl().vpts, &m.suite, 3));
        assert!(bounded_failures(&samples::faithful_impl().vpts, &m.suite, 3).contains(&w("aax")));
    }

    #[test]
    fn operands_are_named_in_errors() {
        let s = samples::pushdown_spec();
        let mut d = samples::desired_anbnx();
        d.transitions.insert(Transition::push("d0", "a", "A", "d1"));
        match build_fault_model(&s, &d, &samples::forbidden_extra_b()) {
            Err(Error::NotDeterministic { operand, .. }) => assert_eq!(operand, "desired"),
            other => panic!("{other:?}"),
        }
        let v = check_conformance(
            &samples::drink_dispenser().vpts,
            &s,
            &samples::desired_anbnx(),
            &samples::forbidden_extra_b(),
        );
        assert!(matches!(v, Err(Error::AlphabetMismatch(_))), "{v:?}");
    }

    #[test]
    fn verdict_json_uses_camel_case() {
        let v = check_conformance(
            &samples::faulty_impl().vpts,
            &samples::pushdown_spec(),
            &samples::desired_anbnx(),
            &samples::forbidden_extra_b(),
        )
        .unwrap();
        let j = serde_json::to_value(&v).unwrap();
        assert_eq!(j["outcome"], "FAIL");
        assert_eq!(j["clause"], "DesiredMissing");
        assert!(j["suiteStates"].is_number());
        assert!(j["timings"]["checkMicros"].is_number());
    }
}
