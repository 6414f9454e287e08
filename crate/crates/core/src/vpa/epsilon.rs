//! Elimination of ε-moves.

use std::collections::{BTreeMap, BTreeSet};

use super::{Transition, Vpa};
use crate::error::Error;

impl Vpa {
    /// States reachable from each state through ε-moves alone, itself included.
    pub fn epsilon_closures(&self) -> BTreeMap<String, BTreeSet<String>> {
        let mut e: BTreeMap<String, BTreeSet<String>> = self
            .states
            .iter()
            .map(|s| (s.clone(), BTreeSet::from([s.clone()])))
            .collect();
        let silent: Vec<&Transition> = self.transitions.iter().filter(|t| t.is_silent()).collect();
        loop {
            let mut changed = false;
            for t in &silent {
                let from_target = e.get(&t.target).cloned().unwrap_or_default();
                let set = e.entry(t.source.clone()).or_default();
                for s in from_target {
                    changed |= set.insert(s);
                }
            }
            if !changed {
                return e;
            }
        }
    }

    /// Equivalent automaton without ε-moves over the same state set.
    pub fn remove_epsilon_moves(&self) -> Vpa {
        let e = self.epsilon_closures();
        let empty = BTreeSet::new();
        let closure = |s: &String| e.get(s).unwrap_or(&empty);
        let mut transitions = BTreeSet::new();
        for t in self.transitions.iter().filter(|t| !t.is_silent()) {
            for (r, er) in &e {
                if !er.contains(&t.source) {
                    continue;
                }
                for p in closure(&t.target) {
                    transitions.insert(Transition {
                        source: r.clone(),
                        target: p.clone(),
                        ..t.clone()
                    });
                }
            }
        }
        let initial = self
            .initial
            .iter()
            .flat_map(|s| closure(s).iter().cloned())
            .collect();
        Vpa {
            initial,
            transitions,
            ..self.clone()
        }
    }

    /// ε-removal for deterministic input that keeps the result deterministic.
    ///
    /// ε-cycles are first collapsed into their least member, then the remaining
    /// ε-moves are spliced away one at a time, least source first, always
    /// picking a move whose target has no ε-move of its own.
    pub fn remove_epsilon_moves_deterministic(&self) -> Result<Vpa, Error> {
        if let Some(v) = self.determinism_violation() {
            return Err(Error::NotDeterministic {
                operand: "input".into(),
                reason: v.to_string(),
            });
        }
        let mut a = self.clone();
        for cycle in silent_cycles(&a) {
            collapse_cycle(&mut a, &cycle);
        }
        loop {
            let has_silent: BTreeSet<&String> = a
                .transitions
                .iter()
                .filter(|t| t.is_silent())
                .map(|t| &t.source)
                .collect();
            let Some(t) = a
                .transitions
                .iter()
                .filter(|t| t.is_silent() && !has_silent.contains(&t.target))
                .min_by(|x, y| x.source.cmp(&y.source))
                .cloned()
            else {
                break;
            };
            splice(&mut a, &t);
        }
        Ok(a)
    }
}

/// Cycles of the ε-graph, which is functional in a deterministic automaton.
fn silent_cycles(a: &Vpa) -> Vec<Vec<String>> {
    let next: BTreeMap<&String, &String> = a
        .transitions
        .iter()
        .filter(|t| t.is_silent())
        .map(|t| (&t.source, &t.target))
        .collect();
    let mut done: BTreeSet<&String> = BTreeSet::new();
    let mut cycles = Vec::new();
    for &start in next.keys() {
        let mut path: Vec<&String> = Vec::new();
        let mut on_path: BTreeMap<&String, usize> = BTreeMap::new();
        let mut cur = Some(start);
        while let Some(s) = cur {
            if done.contains(s) {
                break;
            }
            if let Some(&i) = on_path.get(s) {
                cycles.push(path[i..].iter().map(|s| (*s).clone()).collect());
                break;
            }
            on_path.insert(s, path.len());
            path.push(s);
            cur = next.get(s).copied();
        }
        done.extend(path);
    }
    cycles
}

fn collapse_cycle(a: &mut Vpa, cycle: &[String]) {
    let members: BTreeSet<&String> = cycle.iter().collect();
    let rep = (*members.iter().next().expect("non-empty cycle")).clone();
    let transitions = a
        .transitions
        .iter()
        .filter_map(|t| {
            let inside_src = members.contains(&t.source);
            let inside_dst = members.contains(&t.target);
            if t.is_silent() && inside_src && inside_dst {
                None
            } else if !inside_src && inside_dst {
                Some(Transition {
                    target: rep.clone(),
                    ..t.clone()
                })
            } else {
                Some(t.clone())
            }
        })
        .collect();
    a.transitions = transitions;
    let hit_final = cycle.iter().any(|s| a.finals.contains(s));
    let hit_initial = cycle.iter().any(|s| a.initial.contains(s));
    for s in cycle.iter().filter(|s| **s != rep) {
        a.states.remove(s);
        a.finals.remove(s);
        a.initial.remove(s);
    }
    if hit_final {
        a.finals.insert(rep.clone());
    }
    if hit_initial {
        a.initial = BTreeSet::from([rep]);
    }
}

fn splice(a: &mut Vpa, t: &Transition) {
    let (p, q) = (&t.source, &t.target);
    a.transitions.remove(t);
    let copies: Vec<Transition> = a
        .transitions
        .iter()
        .filter(|u| &u.source == q)
        .map(|u| Transition {
            source: p.clone(),
            ..u.clone()
        })
        .collect();
    a.transitions.extend(copies);
    if a.initial.contains(p) && !a.finals.contains(p) {
        a.initial = BTreeSet::from([q.clone()]);
    }
    if a.finals.contains(q) {
        a.finals.insert(p.clone());
    }
}
