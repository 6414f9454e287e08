//! Index-based view of an automaton used by the search-heavy routines.

use std::collections::{HashMap, HashSet};

use super::{Label, StackSymbol, Transition, TransitionKind, Vpa};
use crate::error::UnknownSymbol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Slot {
    Bottom,
    Any,
    Sym(u32),
}

#[derive(Debug, Clone)]
pub(crate) struct Edge {
    pub src: usize,
    /// `None` for silent moves.
    pub label: Option<usize>,
    pub kind: TransitionKind,
    pub slot: Slot,
    pub dst: usize,
}

/// Stack is stored bottom first so the top is the last element.
pub(crate) type Cfg = (usize, Vec<u32>);

#[derive(Debug, Clone)]
pub(crate) struct Machine {
    pub states: Vec<String>,
    #[cfg_attr(not(test), allow(dead_code))]
    state_ix: HashMap<String, usize>,
    pub symbols: Vec<String>,
    sym_ix: HashMap<String, usize>,
    pub stack: Vec<String>,
    pub initial: Vec<usize>,
    pub finals: Vec<bool>,
    pub edges: Vec<Edge>,
    pub transitions: Vec<Transition>,
    pub out: Vec<Vec<usize>>,
}

fn intern(names: &mut Vec<String>, ix: &mut HashMap<String, usize>, name: &str) -> usize {
    if let Some(&i) = ix.get(name) {
        return i;
    }
    names.push(name.to_string());
    ix.insert(name.to_string(), names.len() - 1);
    names.len() - 1
}

impl Machine {
    /// Compiles `a`. Names referenced but not declared are interned on the fly,
    /// so this never fails, even on invalid input.
    pub fn compile(a: &Vpa) -> Machine {
        let mut states = Vec::new();
        let mut state_ix = HashMap::new();
        for s in &a.states {
            intern(&mut states, &mut state_ix, s);
        }
        let mut symbols = Vec::new();
        let mut sym_ix = HashMap::new();
        for s in a.alphabet.symbols() {
            intern(&mut symbols, &mut sym_ix, &s);
        }
        let mut stack = Vec::new();
        let mut stack_ix = HashMap::new();
        for z in &a.stack_alphabet {
            intern(&mut stack, &mut stack_ix, z);
        }
        let mut edges = Vec::new();
        let mut transitions = Vec::new();
        for t in &a.transitions {
            let src = intern(&mut states, &mut state_ix, &t.source);
            let dst = intern(&mut states, &mut state_ix, &t.target);
            let label = match &t.label {
                Label::Symbol(s) => Some(intern(&mut symbols, &mut sym_ix, s)),
                Label::Silent => None,
            };
            let slot = match &t.stack {
                StackSymbol::Bottom => Slot::Bottom,
                StackSymbol::Any => Slot::Any,
                StackSymbol::Symbol(z) => Slot::Sym(intern(&mut stack, &mut stack_ix, z) as u32),
            };
            edges.push(Edge {
                src,
                label,
                kind: t.kind,
                slot,
                dst,
            });
            transitions.push(t.clone());
        }
        let mut initial = Vec::new();
        for s in &a.initial {
            initial.push(intern(&mut states, &mut state_ix, s));
        }
        let finals_ix: Vec<usize> = a
            .finals
            .iter()
            .map(|s| intern(&mut states, &mut state_ix, s))
            .collect();
        let mut finals = vec![false; states.len()];
        for f in finals_ix {
            finals[f] = true;
        }
        let mut out = vec![Vec::new(); states.len()];
        for (i, e) in edges.iter().enumerate() {
            out[e.src].push(i);
        }
        Machine {
            states,
            state_ix,
            symbols,
            sym_ix,
            stack,
            initial,
            finals,
            edges,
            transitions,
            out,
        }
    }

    #[cfg(test)]
    pub fn state(&self, name: &str) -> Option<usize> {
        self.state_ix.get(name).copied()
    }

    pub fn encode<S: AsRef<str>>(&self, word: &[S]) -> Result<Vec<usize>, UnknownSymbol> {
        word.iter()
            .map(|s| {
                self.sym_ix
                    .get(s.as_ref())
                    .copied()
                    .ok_or_else(|| UnknownSymbol(s.as_ref().to_string()))
            })
            .collect()
    }

    pub fn decode(&self, c: &Cfg) -> super::Configuration {
        super::Configuration {
            state: self.states[c.0].clone(),
            stack: c
                .1
                .iter()
                .rev()
                .map(|&z| self.stack[z as usize].clone())
                .collect(),
        }
    }

    /// Successor of `c` under edge `e`, if enabled.
    pub fn apply(&self, c: &Cfg, e: &Edge) -> Option<Cfg> {
        let mut stack = c.1.clone();
        match (e.kind, e.slot) {
            (TransitionKind::Push, Slot::Sym(z)) => stack.push(z),
            (TransitionKind::Pop, Slot::Sym(z)) => {
                if stack.last() != Some(&z) {
                    return None;
                }
                stack.pop();
            }
            (TransitionKind::Pop, Slot::Bottom) => {
                if !stack.is_empty() {
                    return None;
                }
            }
            (TransitionKind::Simple | TransitionKind::Silent, _) => {}
            _ => return None,
        }
        Some((e.dst, stack))
    }

    pub fn closure(&self, set: &mut HashSet<Cfg>) {
        let mut work: Vec<Cfg> = set.iter().cloned().collect();
        while let Some(c) = work.pop() {
            for &ei in &self.out[c.0] {
                let e = &self.edges[ei];
                if e.label.is_none() {
                    let next = (e.dst, c.1.clone());
                    if set.insert(next.clone()) {
                        work.push(next);
                    }
                }
            }
        }
    }

    pub fn start(&self) -> HashSet<Cfg> {
        let mut set: HashSet<Cfg> = self.initial.iter().map(|&s| (s, Vec::new())).collect();
        self.closure(&mut set);
        set
    }

    pub fn advance(&self, set: &HashSet<Cfg>, sym: usize) -> HashSet<Cfg> {
        let mut next = HashSet::new();
        for c in set {
            for &ei in &self.out[c.0] {
                let e = &self.edges[ei];
                if e.label == Some(sym) {
                    if let Some(d) = self.apply(c, e) {
                        next.insert(d);
                    }
                }
            }
        }
        self.closure(&mut next);
        next
    }

    pub fn run(&self, word: &[usize]) -> HashSet<Cfg> {
        let mut set = self.start();
        for &a in word {
            if set.is_empty() {
                break;
            }
            set = self.advance(&set, a);
        }
        set
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.run(word).iter().any(|c| self.finals[c.0])
    }
}
