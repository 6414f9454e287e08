//! Closure constructions: product, intersection, completion, union, complement.
//!
//! Every construction returns the full, unpruned automaton so that its size can
//! be compared with the textbook bounds. [`Vpa::trim`] drops the part that is
//! not reachable from an initial state.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::vpa::{Label, StackSymbol, Transition, TransitionKind, Vpa};

pub fn pair_name(left: &str, right: &str) -> String {
    format!("({left},{right})")
}

fn check_alphabets(s: &Vpa, q: &Vpa) -> Result<(), Error> {
    if s.alphabet == q.alphabet {
        return Ok(());
    }
    let mut diffs = Vec::new();
    let parts = [
        ("calls", &s.alphabet.calls, &q.alphabet.calls),
        ("returns", &s.alphabet.returns, &q.alphabet.returns),
        ("internals", &s.alphabet.internals, &q.alphabet.internals),
    ];
    for (name, l, r) in parts {
        for sym in l.symmetric_difference(r) {
            let side = if l.contains(sym) { "left" } else { "right" };
            diffs.push(format!("{name} {sym:?} only on the {side}"));
        }
    }
    Err(Error::AlphabetMismatch(diffs.join(", ")))
}

/// Builds `(a,b)` names and refuses two different pairs that print the same.
struct PairNames {
    seen: BTreeMap<String, (String, String)>,
}

impl PairNames {
    fn new() -> Self {
        PairNames {
            seen: BTreeMap::new(),
        }
    }

    fn name(&mut self, l: &str, r: &str) -> Result<String, Error> {
        let n = pair_name(l, r);
        match self.seen.get(&n) {
            Some((a, b)) if a != l || b != r => Err(Error::NameCollision(n)),
            Some(_) => Ok(n),
            None => {
                self.seen.insert(n.clone(), (l.to_string(), r.to_string()));
                Ok(n)
            }
        }
    }
}

/// Synchronous product. Finals are `F × G`.
pub fn product(s: &Vpa, q: &Vpa) -> Result<Vpa, Error> {
    check_alphabets(s, q)?;
    let mut states = PairNames::new();
    let mut stack = PairNames::new();
    let mut out = Vpa {
        alphabet: s.alphabet.clone(),
        ..Vpa::default()
    };
    for a in &s.states {
        for b in &q.states {
            out.states.insert(states.name(a, b)?);
        }
    }
    for a in &s.initial {
        for b in &q.initial {
            out.initial.insert(states.name(a, b)?);
        }
    }
    for a in &s.finals {
        for b in &q.finals {
            out.finals.insert(states.name(a, b)?);
        }
    }
    for x in &s.stack_alphabet {
        for y in &q.stack_alphabet {
            out.stack_alphabet.insert(stack.name(x, y)?);
        }
    }

    let mut by_label: BTreeMap<&str, Vec<&Transition>> = BTreeMap::new();
    for u in &q.transitions {
        if let Label::Symbol(a) = &u.label {
            by_label.entry(a).or_default().push(u);
        }
    }
    for t in &s.transitions {
        let Label::Symbol(a) = &t.label else {
            continue;
        };
        for u in by_label.get(a.as_str()).into_iter().flatten() {
            if t.kind != u.kind {
                continue;
            }
            let z = match (&t.stack, &u.stack) {
                (StackSymbol::Symbol(x), StackSymbol::Symbol(y)) => {
                    StackSymbol::Symbol(stack.name(x, y)?)
                }
                (StackSymbol::Bottom, StackSymbol::Bottom) => StackSymbol::Bottom,
                (StackSymbol::Any, StackSymbol::Any) => StackSymbol::Any,
                _ => continue,
            };
            out.transitions.insert(Transition {
                source: states.name(&t.source, &u.source)?,
                label: t.label.clone(),
                stack: z,
                target: states.name(&t.target, &u.target)?,
                kind: t.kind,
            });
        }
    }
    for t in s.transitions.iter().filter(|t| t.is_silent()) {
        for b in &q.states {
            out.transitions.insert(Transition::silent(
                &states.name(&t.source, b)?,
                &states.name(&t.target, b)?,
            ));
        }
    }
    for u in q.transitions.iter().filter(|t| t.is_silent()) {
        for a in &s.states {
            out.transitions.insert(Transition::silent(
                &states.name(a, &u.source)?,
                &states.name(a, &u.target)?,
            ));
        }
    }
    Ok(out)
}

/// `L(s) ∩ L(q)` with exactly `|S|·|Q|` states.
pub fn intersect(s: &Vpa, q: &Vpa) -> Result<Vpa, Error> {
    product(s, q)
}

fn fresh_name(taken: &BTreeSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (1..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| !taken.contains(n))
        .expect("unbounded search")
}

/// Adds a sink and the missing moves into it so that every input can always be
/// read. States with an ε-move are left alone. `force` adds the sink even when
/// nothing is missing.
fn complete(a: &Vpa, force: bool) -> (Vpa, Option<String>) {
    let calls = &a.alphabet.calls;
    let returns = &a.alphabet.returns;
    let internals = &a.alphabet.internals;
    let mut out = a.clone();
    let push_symbol = match a.stack_alphabet.iter().next() {
        Some(z) => z.clone(),
        None => "_Z0_".to_string(),
    };
    let sink = fresh_name(&a.states, "sink");
    let mut bottoms: Vec<StackSymbol> = vec![StackSymbol::Bottom];
    bottoms.extend(a.stack_alphabet.iter().cloned().map(StackSymbol::Symbol));

    let mut added = BTreeSet::new();
    for s in &a.states {
        let outgoing: Vec<&Transition> = a.transitions_from(s).collect();
        if outgoing.iter().any(|t| t.is_silent()) {
            continue;
        }
        let has = |sym: &str, z: Option<&StackSymbol>| {
            outgoing
                .iter()
                .any(|t| t.label.symbol() == Some(sym) && z.is_none_or(|z| &t.stack == z))
        };
        for c in calls {
            if !has(c, None) {
                added.insert(Transition::push(s, c, &push_symbol, &sink));
            }
        }
        for i in internals {
            if !has(i, None) {
                added.insert(Transition::simple(s, i, &sink));
            }
        }
        for r in returns {
            for w in &bottoms {
                if !has(r, Some(w)) {
                    added.insert(Transition {
                        source: s.clone(),
                        label: Label::Symbol(r.clone()),
                        stack: w.clone(),
                        target: sink.clone(),
                        kind: TransitionKind::Pop,
                    });
                }
            }
        }
    }
    if added.is_empty() && !force {
        return (out, None);
    }
    if a.stack_alphabet.is_empty() && !calls.is_empty() {
        out.stack_alphabet.insert(push_symbol.clone());
        bottoms.push(StackSymbol::Symbol(push_symbol.clone()));
    }
    for c in calls {
        added.insert(Transition::push(&sink, c, &push_symbol, &sink));
    }
    for i in internals {
        added.insert(Transition::simple(&sink, i, &sink));
    }
    for r in returns {
        for w in &bottoms {
            added.insert(Transition {
                source: sink.clone(),
                label: Label::Symbol(r.clone()),
                stack: w.clone(),
                target: sink.clone(),
                kind: TransitionKind::Pop,
            });
        }
    }
    out.states.insert(sink.clone());
    out.transitions.extend(added);
    (out, Some(sink))
}

/// Equivalent non-blocking automaton with at most one extra state.
pub fn make_non_blocking(a: &Vpa) -> Vpa {
    complete(a, false).0
}

/// Prepares an operand for union and complement: no ε-moves, non-blocking,
/// and at least one initial state (the sink, when there was none).
fn saturate(a: &Vpa) -> Vpa {
    let a = if !a.has_silent_moves() {
        a.clone()
    } else if a.is_deterministic() {
        a.remove_epsilon_moves_deterministic()
            .expect("determinism was checked")
    } else {
        a.remove_epsilon_moves()
    };
    let (mut out, sink) = complete(&a, a.initial.is_empty());
    if out.initial.is_empty() {
        out.initial
            .insert(sink.expect("sink is forced without initial states"));
    }
    out
}

/// `L(s) ∪ L(q)` with at most `(|S|+1)(|Q|+1)` states.
pub fn union(s: &Vpa, q: &Vpa) -> Result<Vpa, Error> {
    check_alphabets(s, q)?;
    let l = saturate(s);
    let r = saturate(q);
    let mut p = product(&l, &r)?;
    p.finals.clear();
    for a in &l.states {
        for b in &r.states {
            if l.finals.contains(a) || r.finals.contains(b) {
                p.finals.insert(pair_name(a, b));
            }
        }
    }
    Ok(p)
}

/// `A* − L(a)` for deterministic `a`, with at most `|S|+1` states.
pub fn complement(a: &Vpa) -> Result<Vpa, Error> {
    if let Some(v) = a.determinism_violation() {
        return Err(Error::NotDeterministic {
            operand: "complement operand".into(),
            reason: v.to_string(),
        });
    }
    let mut b = saturate(a);
    b.finals = b.states.difference(&b.finals).cloned().collect();
    Ok(b)
}

impl Vpa {
    /// States reachable from an initial state in the transition graph.
    pub fn graph_reachable(&self) -> BTreeSet<String> {
        let mut seen: BTreeSet<String> = self.initial.clone();
        let mut work: Vec<String> = seen.iter().cloned().collect();
        let mut succ: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for t in &self.transitions {
            succ.entry(&t.source).or_default().push(&t.target);
        }
        while let Some(s) = work.pop() {
            for &n in succ.get(s.as_str()).into_iter().flatten() {
                if seen.insert(n.to_string()) {
                    work.push(n.to_string());
                }
            }
        }
        seen
    }

    /// Drops states not reachable in the transition graph, with their moves.
    pub fn trim(&self) -> Vpa {
        let keep = self.graph_reachable();
        Vpa {
            alphabet: self.alphabet.clone(),
            states: self.states.intersection(&keep).cloned().collect(),
            initial: self.initial.clone(),
            stack_alphabet: self.stack_alphabet.clone(),
            transitions: self
                .transitions
                .iter()
                .filter(|t| keep.contains(&t.source))
                .cloned()
                .collect(),
            finals: self.finals.intersection(&keep).cloned().collect(),
        }
    }
}
