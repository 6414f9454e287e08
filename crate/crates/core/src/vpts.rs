//! Visibly pushdown transition systems and their input/output refinement.

use std::collections::BTreeSet;

use crate::alphabet::{IoPartition, PartitionedAlphabet};
use crate::error::{Error, UnknownSymbol};
use crate::grammar::Analysis;
use crate::vpa::machine::Machine;
use crate::vpa::{Transition, Violation, Vpa};

/// `(S, S_in, L, Γ, T)`. Silent transitions stand for the internal action ς.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vpts {
    pub alphabet: PartitionedAlphabet,
    pub states: BTreeSet<String>,
    pub initial: BTreeSet<String>,
    pub stack_alphabet: BTreeSet<String>,
    pub transitions: BTreeSet<Transition>,
}

/// A VPTS whose actions are split into inputs and outputs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Iovpts {
    pub vpts: Vpts,
    pub io: IoPartition,
}

impl Vpts {
    pub fn new<S, I, G, T>(
        alphabet: PartitionedAlphabet,
        states: S,
        initial: I,
        stack_alphabet: G,
        transitions: T,
    ) -> Self
    where
        S: IntoIterator,
        S::Item: Into<String>,
        I: IntoIterator,
        I::Item: Into<String>,
        G: IntoIterator,
        G::Item: Into<String>,
        T: IntoIterator<Item = Transition>,
    {
        Vpts {
            alphabet,
            states: states.into_iter().map(Into::into).collect(),
            initial: initial.into_iter().map(Into::into).collect(),
            stack_alphabet: stack_alphabet.into_iter().map(Into::into).collect(),
            transitions: transitions.into_iter().collect(),
        }
    }

    /// Structural checks only: everything except state reachability.
    pub fn validate_structure(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = self
            .induced_vpa()
            .validate()
            .into_iter()
            .map(|v| Violation {
                locus: v.locus.replace("-ε->", "-ς->"),
                ..v
            })
            .collect();
        for t in &self.transitions {
            if t.is_silent() && t.source == t.target {
                out.push(Violation::new(
                    format!("transition {}", t.describe("ς")),
                    "ς self-loop",
                ));
            }
        }
        out
    }

    /// Structural checks plus the requirement that every state is reachable
    /// from an initial configuration.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.validate_structure();
        if out.is_empty() {
            let live = self.reachable_states();
            for s in self.states.difference(&live) {
                out.push(Violation::new(
                    format!("state {s}"),
                    "not reachable from an initial configuration",
                ));
            }
        }
        out
    }

    /// States occurring in some configuration reachable from an initial one.
    pub fn reachable_states(&self) -> BTreeSet<String> {
        let m = Machine::compile(&self.induced_vpa());
        let analysis = Analysis::new(&m);
        analysis
            .live_states()
            .into_iter()
            .map(|s| m.states[s].clone())
            .collect()
    }

    /// `inducedVpa`: ς becomes ε and every state is final.
    pub fn induced_vpa(&self) -> Vpa {
        Vpa {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.initial.clone(),
            stack_alphabet: self.stack_alphabet.clone(),
            transitions: self.transitions.clone(),
            finals: self.states.clone(),
        }
    }

    pub fn has_silent_moves(&self) -> bool {
        self.transitions.iter().any(Transition::is_silent)
    }

    /// Sufficient condition for determinism: no ς-moves and a deterministic
    /// induced VPA.
    pub fn is_deterministic(&self) -> bool {
        !self.has_silent_moves() && self.induced_vpa().is_deterministic()
    }

    /// Observable traces up to `max_len` symbols.
    pub fn observable_traces(&self, max_len: usize) -> BTreeSet<Vec<String>> {
        let m = Machine::compile(&self.induced_vpa());
        let mut out = BTreeSet::new();
        let mut word = Vec::new();
        fn walk(
            m: &Machine,
            set: std::collections::HashSet<crate::vpa::machine::Cfg>,
            word: &mut Vec<usize>,
            left: usize,
            out: &mut BTreeSet<Vec<String>>,
        ) {
            out.insert(word.iter().map(|&a| m.symbols[a].clone()).collect());
            if left == 0 {
                return;
            }
            for a in 0..m.symbols.len() {
                let next = m.advance(&set, a);
                if !next.is_empty() {
                    word.push(a);
                    walk(m, next, word, left - 1, out);
                    word.pop();
                }
            }
        }
        let start = m.start();
        if !start.is_empty() {
            walk(&m, start, &mut word, max_len, &mut out);
        }
        out
    }

    /// Whether `word` is an observable trace.
    pub fn has_observable_trace<S: AsRef<str>>(&self, word: &[S]) -> Result<bool, UnknownSymbol> {
        let m = Machine::compile(&self.induced_vpa());
        let w = m.encode(word)?;
        Ok(!m.run(&w).is_empty())
    }
}

impl Vpa {
    /// `inducedVpts`: defined only when every state is final.
    pub fn induced_vpts(&self) -> Result<Vpts, Error> {
        let missing: Vec<String> = self.states.difference(&self.finals).cloned().collect();
        if !missing.is_empty() {
            return Err(Error::NotAllFinal(missing));
        }
        Ok(Vpts {
            alphabet: self.alphabet.clone(),
            states: self.states.clone(),
            initial: self.initial.clone(),
            stack_alphabet: self.stack_alphabet.clone(),
            transitions: self.transitions.clone(),
        })
    }
}

impl Iovpts {
    pub fn new(vpts: Vpts, io: IoPartition) -> Self {
        Iovpts { vpts, io }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = self.vpts.validate();
        out.extend(
            self.io
                .violations(&self.vpts.alphabet)
                .into_iter()
                .map(|m| Violation::new("io", m)),
        );
        out
    }

    pub fn validate_structure(&self) -> Vec<Violation> {
        let mut out = self.vpts.validate_structure();
        out.extend(
            self.io
                .violations(&self.vpts.alphabet)
                .into_iter()
                .map(|m| Violation::new("io", m)),
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn w(s: &str) -> Vec<String> {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn drink_dispenser_traces() {
        let v = samples::drink_dispenser().vpts;
        assert!(v.validate().is_empty());
        let otr = v.observable_traces(4);
        for good in ["bbc", "bbct", "bc", ""] {
            assert!(otr.contains(&w(good)), "{good}");
        }
        assert!(!otr.contains(&w("cb")));
        assert!(!v.has_observable_trace(&w("cb")).unwrap());
    }

    #[test]
    fn zero_length_traces() {
        let v = samples::drink_dispenser().vpts;
        assert_eq!(v.observable_traces(0), BTreeSet::from([vec![]]));
    }

    #[test]
    fn determinism_of_examples() {
        assert!(samples::pushdown_spec().vpts.is_deterministic());
        assert!(!samples::drink_dispenser().vpts.is_deterministic());
        let mut v = samples::pushdown_spec().vpts;
        v.initial.insert("s1".into());
        assert!(!v.is_deterministic());
    }

    #[test]
    fn induced_vpa_of_dispenser() {
        let a = samples::drink_dispenser().vpts.induced_vpa();
        assert!(a.transitions.contains(&Transition::silent("s1", "s0")));
        assert_eq!(a.finals, a.states);
    }

    #[test]
    fn induced_round_trip() {
        let v = samples::drink_dispenser().vpts;
        assert_eq!(v.induced_vpa().induced_vpts().unwrap(), v);
        assert!(matches!(
            samples::anbn().induced_vpts(),
            Err(Error::NotAllFinal(_))
        ));
    }

    #[test]
    fn silent_self_loop_is_rejected() {
        let mut v = samples::drink_dispenser().vpts;
        v.transitions.insert(Transition::silent("s0", "s0"));
        assert_eq!(v.validate().len(), 1);
    }

    #[test]
    fn unreachable_state_is_reported() {
        let mut v = samples::drink_dispenser().vpts;
        v.states.insert("island".into());
        let errs = v.validate();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].locus.contains("island"));
    }

    #[test]
    fn state_behind_dead_pop_is_unreachable() {
        let mut v = samples::drink_dispenser().vpts;
        v.states.insert("behind".into());
        v.transitions
            .insert(Transition::pop_bottom("s1", "c", "behind"));
        assert!(v.validate().is_empty());
        v.stack_alphabet.insert("Y".into());
        v.transitions
            .remove(&Transition::pop_bottom("s1", "c", "behind"));
        v.transitions
            .insert(Transition::pop("s1", "c", "Y", "behind"));
        let errs = v.validate();
        assert_eq!(errs.len(), 1, "{errs:?}");
        assert!(errs[0].locus.contains("behind"));
    }

    #[test]
    fn io_split_is_checked() {
        let mut s = samples::pushdown_spec();
        assert!(s.validate().is_empty());
        s.io.outputs.insert("a".into());
        assert_eq!(s.validate().len(), 1);
    }
}
