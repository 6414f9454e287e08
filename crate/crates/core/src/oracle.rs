//! Brute-force reference semantics.
//!
//! Nothing here shares code with the constructions it is used to check: runs
//! are simulated directly on the string-keyed transition sets, and pushdown
//! reachability is decided by a plain relational fixed point.

use std::collections::BTreeSet;

use crate::alphabet::{PartitionedAlphabet, SymbolKind};
use crate::vpa::{Label, StackSymbol, Transition, TransitionKind, Vpa};
use crate::vpts::Vpts;

pub type Word = Vec<String>;

/// Every word up to `bound` symbols that the source accepts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedLanguage {
    pub words: BTreeSet<Word>,
    pub bound: usize,
    pub source: String,
}

impl BoundedLanguage {
    pub fn contains<S: AsRef<str>>(&self, w: &[S]) -> bool {
        let w: Word = w.iter().map(|s| s.as_ref().to_string()).collect();
        self.words.contains(&w)
    }

    /// Words in length-then-lexicographic order.
    pub fn shortlex(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.words.iter().cloned().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }
}

/// Stack top first.
type Conf = (String, Vec<String>);

struct Sim<'a> {
    transitions: &'a BTreeSet<Transition>,
    alphabet: &'a PartitionedAlphabet,
}

impl<'a> Sim<'a> {
    fn fire(&self, (state, stack): &Conf, t: &Transition) -> Option<Conf> {
        if &t.source != state {
            return None;
        }
        let mut stack = stack.clone();
        match (&t.kind, &t.stack) {
            (TransitionKind::Push, StackSymbol::Symbol(z)) => stack.insert(0, z.clone()),
            (TransitionKind::Pop, StackSymbol::Symbol(z)) => {
                if stack.first() != Some(z) {
                    return None;
                }
                stack.remove(0);
            }
            (TransitionKind::Pop, StackSymbol::Bottom) => {
                if !stack.is_empty() {
                    return None;
                }
            }
            (TransitionKind::Simple | TransitionKind::Silent, StackSymbol::Any) => {}
            _ => return None,
        }
        Some((t.target.clone(), stack))
    }

    fn close(&self, set: BTreeSet<Conf>) -> BTreeSet<Conf> {
        let mut done = set.clone();
        let mut todo: Vec<Conf> = set.into_iter().collect();
        while let Some(c) = todo.pop() {
            for t in self.transitions.iter().filter(|t| t.label == Label::Silent) {
                if let Some(d) = self.fire(&c, t) {
                    if done.insert(d.clone()) {
                        todo.push(d);
                    }
                }
            }
        }
        done
    }

    fn read(&self, set: &BTreeSet<Conf>, sym: &str) -> BTreeSet<Conf> {
        let mut next = BTreeSet::new();
        for c in set {
            for t in self.transitions {
                if t.label.symbol() == Some(sym) {
                    if let Some(d) = self.fire(c, t) {
                        next.insert(d);
                    }
                }
            }
        }
        self.close(next)
    }

    fn start<'s>(&self, initial: impl Iterator<Item = &'s String>) -> BTreeSet<Conf> {
        self.close(initial.map(|s| (s.clone(), Vec::new())).collect())
    }

    /// Calls `visit` on every word up to `bound` with its configuration set,
    /// skipping words that leave no configuration.
    fn walk(
        &self,
        set: BTreeSet<Conf>,
        word: &mut Word,
        bound: usize,
        visit: &mut dyn FnMut(&Word, &BTreeSet<Conf>),
    ) {
        if set.is_empty() {
            return;
        }
        visit(word, &set);
        if word.len() == bound {
            return;
        }
        for a in self.alphabet.symbols() {
            let next = self.read(&set, &a);
            word.push(a);
            self.walk(next, word, bound, visit);
            word.pop();
        }
    }
}

fn describe(kind: &str, states: &BTreeSet<String>) -> String {
    let names: Vec<&str> = states.iter().map(String::as_str).collect();
    format!("{kind}[{}]", names.join(","))
}

/// Membership by direct simulation.
pub fn accepts<S: AsRef<str>>(a: &Vpa, word: &[S]) -> bool {
    let sim = Sim {
        transitions: &a.transitions,
        alphabet: &a.alphabet,
    };
    let mut set = sim.start(a.initial.iter());
    for s in word {
        set = sim.read(&set, s.as_ref());
    }
    set.iter().any(|(s, _)| a.finals.contains(s))
}

/// Whether `word` is an observable trace of `v`.
pub fn observable<S: AsRef<str>>(v: &Vpts, word: &[S]) -> bool {
    let sim = Sim {
        transitions: &v.transitions,
        alphabet: &v.alphabet,
    };
    let mut set = sim.start(v.initial.iter());
    for s in word {
        set = sim.read(&set, s.as_ref());
    }
    !set.is_empty()
}

pub fn enumerate_vpa(a: &Vpa, bound: usize) -> BoundedLanguage {
    let sim = Sim {
        transitions: &a.transitions,
        alphabet: &a.alphabet,
    };
    let mut words = BTreeSet::new();
    sim.walk(
        sim.start(a.initial.iter()),
        &mut Vec::new(),
        bound,
        &mut |w, set| {
            if set.iter().any(|(s, _)| a.finals.contains(s)) {
                words.insert(w.clone());
            }
        },
    );
    BoundedLanguage {
        words,
        bound,
        source: describe("vpa", &a.states),
    }
}

pub fn enumerate_otr(v: &Vpts, bound: usize) -> BoundedLanguage {
    let sim = Sim {
        transitions: &v.transitions,
        alphabet: &v.alphabet,
    };
    let mut words = BTreeSet::new();
    sim.walk(
        sim.start(v.initial.iter()),
        &mut Vec::new(),
        bound,
        &mut |w, _| {
            words.insert(w.clone());
        },
    );
    BoundedLanguage {
        words,
        bound,
        source: describe("vpts", &v.states),
    }
}

/// All words over the alphabet up to `bound` symbols.
pub fn all_words(alphabet: &PartitionedAlphabet, bound: usize) -> BTreeSet<Word> {
    let syms = alphabet.symbols();
    let mut out = BTreeSet::from([Vec::new()]);
    let mut layer: Vec<Word> = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &layer {
            for a in &syms {
                let mut v = w.clone();
                v.push(a.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Transition sequences of at most `bound` steps from an initial configuration.
pub fn enumerate_runs(v: &Vpts, bound: usize) -> BTreeSet<Vec<Transition>> {
    let sim = Sim {
        transitions: &v.transitions,
        alphabet: &v.alphabet,
    };
    let mut out = BTreeSet::new();
    let mut todo: Vec<(Vec<Transition>, Conf)> = v
        .initial
        .iter()
        .map(|s| (Vec::new(), (s.clone(), Vec::new())))
        .collect();
    while let Some((run, conf)) = todo.pop() {
        out.insert(run.clone());
        if run.len() == bound {
            continue;
        }
        for t in &v.transitions {
            if let Some(d) = sim.fire(&conf, t) {
                let mut r = run.clone();
                r.push(t.clone());
                todo.push((r, d));
            }
        }
    }
    out
}

/// Replays `run` from the empty stack at its first source; the final
/// configuration when every step is enabled.
pub fn replay(v: &Vpts, run: &[Transition]) -> Option<(String, Vec<String>)> {
    let sim = Sim {
        transitions: &v.transitions,
        alphabet: &v.alphabet,
    };
    let first = run.first()?;
    if !v.initial.contains(&first.source) {
        return None;
    }
    let mut conf: Conf = (first.source.clone(), Vec::new());
    for t in run {
        if !v.transitions.contains(t) {
            return None;
        }
        conf = sim.fire(&conf, t)?;
    }
    Some(conf)
}

/// Stack tops occurring with each state in reachable configurations, with
/// `Bottom` standing for the empty stack.
pub fn reachable_tops(v: &Vpts) -> BTreeSet<(String, StackSymbol)> {
    let steps: Vec<&Transition> = v
        .transitions
        .iter()
        .filter(|t| matches!(t.kind, TransitionKind::Simple | TransitionKind::Silent))
        .collect();
    let pushes: Vec<&Transition> = v
        .transitions
        .iter()
        .filter(|t| t.kind == TransitionKind::Push)
        .collect();
    let pops: Vec<&Transition> = v
        .transitions
        .iter()
        .filter(|t| t.kind == TransitionKind::Pop)
        .collect();

    // Well-matched segments that leave the stack as they found it.
    let mut bal: BTreeSet<(String, String)> =
        v.states.iter().map(|s| (s.clone(), s.clone())).collect();
    loop {
        let mut add = Vec::new();
        for (p, x) in &bal {
            for t in steps.iter().filter(|t| &t.source == x) {
                add.push((p.clone(), t.target.clone()));
            }
            for t in pushes.iter().filter(|t| &t.source == x) {
                for (y, z) in bal.iter().filter(|(y, _)| y == &t.target) {
                    let _ = y;
                    for u in pops.iter().filter(|u| &u.source == z && u.stack == t.stack) {
                        add.push((p.clone(), u.target.clone()));
                    }
                }
            }
        }
        let before = bal.len();
        bal.extend(add);
        if bal.len() == before {
            break;
        }
    }

    let mut reach: BTreeSet<(String, StackSymbol)> = v
        .initial
        .iter()
        .map(|s| (s.clone(), StackSymbol::Bottom))
        .collect();
    loop {
        let mut add = Vec::new();
        for (s, top) in &reach {
            for (_, s2) in bal.iter().filter(|(p, _)| p == s) {
                add.push((s2.clone(), top.clone()));
            }
            for t in pushes.iter().filter(|t| &t.source == s) {
                add.push((t.target.clone(), t.stack.clone()));
            }
            if *top == StackSymbol::Bottom {
                for t in pops
                    .iter()
                    .filter(|t| &t.source == s && t.stack == StackSymbol::Bottom)
                {
                    add.push((t.target.clone(), StackSymbol::Bottom));
                }
            }
        }
        let before = reach.len();
        reach.extend(add);
        if reach.len() == before {
            break;
        }
    }
    reach
}

/// Shortest word of `otr(iut)` up to `bound` that breaks one of the two
/// conformance clauses, read directly off the definition.
pub fn first_conformance_violation(
    iut: &Vpts,
    spec: &Vpts,
    desired: &Vpa,
    forbidden: &Vpa,
    bound: usize,
) -> Option<Word> {
    let spec_otr = enumerate_otr(spec, bound);
    enumerate_otr(iut, bound).shortlex().into_iter().find(|w| {
        let in_spec = spec_otr.words.contains(w);
        (accepts(forbidden, w) && in_spec) || (accepts(desired, w) && !in_spec)
    })
}

/// Kind of a visible symbol, if known.
pub fn kind_of(alphabet: &PartitionedAlphabet, sym: &str) -> Option<SymbolKind> {
    alphabet.kind(sym)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn w(s: &str) -> Word {
        s.chars().map(|c| c.to_string()).collect()
    }

    #[test]
    fn anbn_up_to_four() {
        let l = enumerate_vpa(&samples::anbn(), 4);
        assert_eq!(l.words, BTreeSet::from([w(""), w("ab"), w("aabb")]));
        assert_eq!(l.bound, 4);
    }

    #[test]
    fn bound_zero() {
        assert_eq!(
            enumerate_vpa(&samples::anbn(), 0).words,
            BTreeSet::from([w("")])
        );
        let mut a = samples::anbn();
        a.finals.remove("s0");
        assert!(enumerate_vpa(&a, 0).words.is_empty());
    }

    #[test]
    fn enumeration_agrees_with_membership() {
        let a = samples::anbn();
        let l = enumerate_vpa(&a, 6);
        for word in all_words(&a.alphabet, 6) {
            assert_eq!(
                l.words.contains(&word),
                a.accepts(&word).unwrap(),
                "{word:?}"
            );
        }
    }

    #[test]
    fn dispenser_up_to_two() {
        let l = enumerate_otr(&samples::drink_dispenser().vpts, 2);
        let want: BTreeSet<Word> = ["", "b", "bb", "bc", "bt"].iter().map(|s| w(s)).collect();
        assert_eq!(l.words, want);
    }

    #[test]
    fn no_transitions_only_empty_trace() {
        let mut v = samples::drink_dispenser().vpts;
        v.transitions.clear();
        assert_eq!(enumerate_otr(&v, 3).words, BTreeSet::from([w("")]));
    }

    #[test]
    fn otr_equals_induced_language() {
        let v = samples::drink_dispenser().vpts;
        assert_eq!(
            enumerate_otr(&v, 5).words,
            enumerate_vpa(&v.induced_vpa(), 5).words
        );
    }

    #[test]
    fn tops_of_dispenser() {
        let tops = reachable_tops(&samples::drink_dispenser().vpts);
        let z = StackSymbol::Symbol("Z".into());
        let want = BTreeSet::from([
            ("s0".to_string(), StackSymbol::Bottom),
            ("s0".to_string(), z.clone()),
            ("s1".to_string(), StackSymbol::Bottom),
            ("s1".to_string(), z),
        ]);
        assert_eq!(tops, want);
    }

    #[test]
    fn all_words_counts() {
        let a = samples::anbn().alphabet;
        assert_eq!(all_words(&a, 3).len(), 1 + 2 + 4 + 8);
    }
}
