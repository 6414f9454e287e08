use std::collections::BTreeMap;
use std::fmt;

use super::{Transition, TransitionKind, Vpa};

/// First reason an automaton fails the determinism conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeterminismViolation {
    /// More than one initial state.
    InitialStates(Vec<String>),
    /// Two pushes on the same source and label differ in stack symbol or target.
    Push(Transition, Transition),
    /// Two pops, simple or silent moves agree on source, label and stack
    /// symbol but not on target.
    Target(Transition, Transition),
    /// A state has both a silent move and a visible one.
    SilentMixed(Transition, Transition),
}

impl fmt::Display for DeterminismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeterminismViolation::InitialStates(s) => {
                write!(f, "{} initial states ({})", s.len(), s.join(", "))
            }
            DeterminismViolation::Push(a, b) => {
                write!(f, "conflicting pushes [{a}] and [{b}]")
            }
            DeterminismViolation::Target(a, b) => {
                write!(f, "same move to different targets [{a}] and [{b}]")
            }
            DeterminismViolation::SilentMixed(a, b) => {
                write!(f, "silent move [{a}] next to visible move [{b}]")
            }
        }
    }
}

impl Vpa {
    pub fn determinism_violation(&self) -> Option<DeterminismViolation> {
        if self.initial.len() > 1 {
            return Some(DeterminismViolation::InitialStates(
                self.initial.iter().cloned().collect(),
            ));
        }
        let mut push: BTreeMap<(&str, &super::Label), &Transition> = BTreeMap::new();
        let mut other: BTreeMap<(&str, &super::Label, &super::StackSymbol), &Transition> =
            BTreeMap::new();
        let mut silent: BTreeMap<&str, &Transition> = BTreeMap::new();
        let mut visible: BTreeMap<&str, &Transition> = BTreeMap::new();
        for t in &self.transitions {
            if t.kind == TransitionKind::Push {
                if let Some(u) = push.insert((&t.source, &t.label), t) {
                    if u.stack != t.stack || u.target != t.target {
                        return Some(DeterminismViolation::Push(u.clone(), t.clone()));
                    }
                }
            } else if let Some(u) = other.insert((&t.source, &t.label, &t.stack), t) {
                if u.target != t.target {
                    return Some(DeterminismViolation::Target(u.clone(), t.clone()));
                }
            }
            if t.is_silent() {
                silent.entry(&t.source).or_insert(t);
            } else {
                visible.entry(&t.source).or_insert(t);
            }
        }
        for (s, t) in &silent {
            if let Some(u) = visible.get(s) {
                return Some(DeterminismViolation::SilentMixed(
                    (*t).clone(),
                    (*u).clone(),
                ));
            }
        }
        None
    }

    pub fn is_deterministic(&self) -> bool {
        self.determinism_violation().is_none()
    }
}
