//! The trace grammar of a VPTS and the analyses built on it.
//!
//! Nonterminal `[s,Z,p]` derives the runs that start in `s` with `Z` on top and
//! end by popping that `Z` into `p`; `[s,⊥,-]` derives the runs that start in
//! `s` on the empty stack. A leftmost sentential form
//! `t1…tn [u0,W1,u1]…[u(m-1),⊥,-]` stands for the run `t1…tn` reaching
//! `(u0, W1…⊥)`.
//!
//! The explicit grammar has one nonterminal per continuation guess, which is
//! quadratic in the number of states. The analyses therefore work on the
//! quotient that forgets the guess: a leftmost nonterminal is determined by its
//! state and stack symbol, and a nonterminal is productive exactly when the
//! corresponding summary `(q, W, r)` exists. Costs are words ordered by length
//! and then lexicographically, which is monotone under concatenation, so a
//! least-cost-first search gives shortest yields and shortest prefixes.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};
use std::fmt;

use crate::vpa::machine::{Machine, Slot};
use crate::vpa::{StackSymbol, Transition, TransitionKind};
use crate::vpts::Vpts;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Nonterminal {
    pub state: String,
    /// `Bottom` or a symbol of Γ.
    pub stack: StackSymbol,
    /// `None` stands for `-` and goes with `Bottom`.
    pub cont: Option<String>,
}

impl Nonterminal {
    pub fn bottom(state: &str) -> Self {
        Nonterminal {
            state: state.into(),
            stack: StackSymbol::Bottom,
            cont: None,
        }
    }

    pub fn guess(state: &str, stack: &str, cont: &str) -> Self {
        Nonterminal {
            state: state.into(),
            stack: StackSymbol::Symbol(stack.into()),
            cont: Some(cont.into()),
        }
    }
}

impl fmt::Display for Nonterminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cont = self.cont.as_deref().unwrap_or("-");
        write!(f, "[{},{},{}]", self.state, self.stack, cont)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    Start,
    Nt(Nonterminal),
}

/// `head → terminal body…`. Only start productions lack a terminal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Production {
    pub head: Head,
    pub terminal: Option<Transition>,
    pub body: Vec<Nonterminal>,
}

impl fmt::Display for Production {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.head {
            Head::Start => f.write_str("I →")?,
            Head::Nt(n) => write!(f, "{n} →")?,
        }
        if let Some(t) = &self.terminal {
            write!(f, " ⟨{}⟩", t.describe("ς"))?;
        }
        for n in &self.body {
            write!(f, " {n}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceGrammar {
    pub nonterminals: BTreeSet<Nonterminal>,
    pub productions: BTreeSet<Production>,
}

/// Worklist construction of the trace grammar, one nonterminal at a time.
pub fn build_trace_grammar(v: &Vpts) -> TraceGrammar {
    let mut g = TraceGrammar::default();
    let mut pending: Vec<Nonterminal> = Vec::new();
    let mut seen: BTreeSet<Nonterminal> = BTreeSet::new();
    let mut enqueue = |n: Nonterminal, pending: &mut Vec<Nonterminal>| {
        if seen.insert(n.clone()) {
            pending.push(n);
        }
    };
    for s in &v.initial {
        let n = Nonterminal::bottom(s);
        g.productions.insert(Production {
            head: Head::Start,
            terminal: None,
            body: vec![n.clone()],
        });
        enqueue(n, &mut pending);
    }
    while let Some(x) = pending.pop() {
        g.nonterminals.insert(x.clone());
        for t in v.transitions.iter().filter(|t| t.source == x.state) {
            let mut add = |body: Vec<Nonterminal>, pending: &mut Vec<Nonterminal>| {
                for n in &body {
                    enqueue(n.clone(), pending);
                }
                g.productions.insert(Production {
                    head: Head::Nt(x.clone()),
                    terminal: Some(t.clone()),
                    body,
                });
            };
            match t.kind {
                TransitionKind::Push => {
                    for r in &v.states {
                        let inner = Nonterminal {
                            state: t.target.clone(),
                            stack: t.stack.clone(),
                            cont: Some(r.clone()),
                        };
                        let outer = Nonterminal {
                            state: r.clone(),
                            ..x.clone()
                        };
                        add(vec![inner, outer], &mut pending);
                    }
                }
                TransitionKind::Simple | TransitionKind::Silent => {
                    let next = Nonterminal {
                        state: t.target.clone(),
                        ..x.clone()
                    };
                    add(vec![next], &mut pending);
                }
                TransitionKind::Pop => match (&t.stack, &x.stack) {
                    (StackSymbol::Symbol(w), StackSymbol::Symbol(z))
                        if w == z && x.cont.as_deref() == Some(t.target.as_str()) =>
                    {
                        add(vec![], &mut pending);
                    }
                    (StackSymbol::Bottom, StackSymbol::Bottom) => {
                        add(vec![Nonterminal::bottom(&t.target)], &mut pending);
                    }
                    _ => {}
                },
            }
        }
    }
    g
}

impl TraceGrammar {
    /// Terminal prefixes of leftmost sentential forms with at most `max`
    /// terminals.
    pub fn leftmost_prefixes(&self, max: usize) -> BTreeSet<Vec<Transition>> {
        let mut by_head: BTreeMap<&Nonterminal, Vec<&Production>> = BTreeMap::new();
        let mut starts = Vec::new();
        for p in &self.productions {
            match &p.head {
                Head::Start => starts.extend(p.body.iter().cloned()),
                Head::Nt(n) => by_head.entry(n).or_default().push(p),
            }
        }
        let mut out = BTreeSet::new();
        // Pending nonterminals are kept leftmost-last.
        let mut work: Vec<(Vec<Transition>, Vec<Nonterminal>)> =
            starts.into_iter().map(|n| (Vec::new(), vec![n])).collect();
        while let Some((prefix, rest)) = work.pop() {
            out.insert(prefix.clone());
            if prefix.len() >= max {
                continue;
            }
            let Some(x) = rest.last() else { continue };
            for p in by_head.get(x).into_iter().flatten() {
                let mut next = prefix.clone();
                next.extend(p.terminal.clone());
                let mut stack = rest[..rest.len() - 1].to_vec();
                stack.extend(p.body.iter().rev().cloned());
                work.push((next, stack));
            }
        }
        out
    }
}

/// Word over symbol indices, ordered by length and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Cost {
    len: usize,
    word: Vec<usize>,
}

impl Cost {
    fn empty() -> Self {
        Cost {
            len: 0,
            word: Vec::new(),
        }
    }

    fn then_label(&self, label: Option<usize>) -> Cost {
        let mut c = self.clone();
        if let Some(a) = label {
            c.word.push(a);
            c.len += 1;
        }
        c
    }

    fn then(&self, other: &Cost) -> Cost {
        let mut c = self.clone();
        c.word.extend_from_slice(&other.word);
        c.len += other.len;
        c
    }

    #[cfg(test)]
    pub fn word(&self) -> &[usize] {
        &self.word
    }
}

type SumKey = (usize, u32, usize);
/// Stack top `None` is the bottom marker.
pub(crate) type NodeKey = (usize, Option<u32>);

#[derive(Debug, Clone)]
enum SumHow {
    Pop(usize),
    Step(usize, SumKey),
    Push(usize, SumKey, SumKey),
}

#[derive(Debug, Clone)]
enum NodeHow {
    Start,
    Step(usize, NodeKey),
    PushInto(usize, NodeKey),
    PushOver(usize, NodeKey, SumKey),
}

/// Shortest summaries and shortest leftmost prefixes of one machine.
pub(crate) struct Analysis<'m> {
    m: &'m Machine,
    sums: HashMap<SumKey, (Cost, SumHow)>,
    /// Summaries by first state and pushed symbol.
    sums_from: HashMap<(usize, u32), Vec<usize>>,
    nodes: HashMap<NodeKey, (Cost, NodeHow)>,
    /// Finalization order of nodes, cheapest first.
    order: Vec<NodeKey>,
}

impl<'m> Analysis<'m> {
    pub fn new(m: &'m Machine) -> Self {
        let mut a = Analysis {
            m,
            sums: HashMap::new(),
            sums_from: HashMap::new(),
            nodes: HashMap::new(),
            order: Vec::new(),
        };
        a.summaries();
        a.prefixes(None);
        a
    }

    /// Same as [`Analysis::new`] but stops at the first node whose state
    /// satisfies `goal`.
    pub fn until(m: &'m Machine, goal: impl Fn(usize) -> bool) -> Self {
        let mut a = Analysis {
            m,
            sums: HashMap::new(),
            sums_from: HashMap::new(),
            nodes: HashMap::new(),
            order: Vec::new(),
        };
        a.summaries();
        a.prefixes(Some(&goal));
        a
    }

    fn summaries(&mut self) {
        let m = self.m;
        let n = m.states.len();
        let mut into_step: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut into_push: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut heap: BinaryHeap<Reverse<(Cost, SumKey, usize)>> = BinaryHeap::new();
        let mut hows: Vec<SumHow> = Vec::new();
        let offer = |heap: &mut BinaryHeap<_>, hows: &mut Vec<SumHow>, c, k, h| {
            hows.push(h);
            heap.push(Reverse((c, k, hows.len() - 1)));
        };
        for (i, e) in m.edges.iter().enumerate() {
            match (e.kind, e.slot) {
                (TransitionKind::Simple | TransitionKind::Silent, _) => into_step[e.dst].push(i),
                (TransitionKind::Push, Slot::Sym(_)) => into_push[e.dst].push(i),
                (TransitionKind::Pop, Slot::Sym(w)) => offer(
                    &mut heap,
                    &mut hows,
                    Cost::empty().then_label(e.label),
                    (e.src, w, e.dst),
                    SumHow::Pop(i),
                ),
                _ => {}
            }
        }
        // Finalized summaries indexed by first state and by last state.
        let mut by_first: Vec<Vec<SumKey>> = vec![Vec::new(); n];
        let mut by_last: Vec<Vec<SumKey>> = vec![Vec::new(); n];
        while let Some(Reverse((cost, key, hi))) = heap.pop() {
            if self.sums.contains_key(&key) {
                continue;
            }
            let (q, w, r) = key;
            self.sums.insert(key, (cost.clone(), hows[hi].clone()));
            self.sums_from.entry((q, w)).or_default().push(r);
            by_first[q].push(key);
            by_last[r].push(key);
            for &ei in &into_step[q] {
                let e = &m.edges[ei];
                let c = Cost::empty().then_label(e.label).then(&cost);
                offer(
                    &mut heap,
                    &mut hows,
                    c,
                    (e.src, w, r),
                    SumHow::Step(ei, key),
                );
            }
            // `key` as the balanced part right after a push of `w` into `q`.
            for &ei in &into_push[q] {
                let e = &m.edges[ei];
                if e.slot != Slot::Sym(w) {
                    continue;
                }
                let head = Cost::empty().then_label(e.label).then(&cost);
                for &after in &by_first[r] {
                    let c = head.then(&self.sums[&after].0);
                    offer(
                        &mut heap,
                        &mut hows,
                        c,
                        (e.src, after.1, after.2),
                        SumHow::Push(ei, key, after),
                    );
                }
            }
            // `key` as the continuation after some balanced part ending in `q`.
            for &inner in &by_last[q] {
                let (q2, v, _) = inner;
                for &ei in &into_push[q2] {
                    let e = &m.edges[ei];
                    if e.slot != Slot::Sym(v) {
                        continue;
                    }
                    let c = Cost::empty()
                        .then_label(e.label)
                        .then(&self.sums[&inner].0)
                        .then(&cost);
                    offer(
                        &mut heap,
                        &mut hows,
                        c,
                        (e.src, w, r),
                        SumHow::Push(ei, inner, key),
                    );
                }
            }
        }
    }

    fn prefixes(&mut self, goal: Option<&dyn Fn(usize) -> bool>) {
        let m = self.m;
        let mut heap: BinaryHeap<Reverse<(Cost, NodeKey, usize)>> = BinaryHeap::new();
        let mut hows: Vec<NodeHow> = Vec::new();
        for &s in &m.initial {
            hows.push(NodeHow::Start);
            heap.push(Reverse((Cost::empty(), (s, None), hows.len() - 1)));
        }
        while let Some(Reverse((cost, key, hi))) = heap.pop() {
            if self.nodes.contains_key(&key) {
                continue;
            }
            self.nodes.insert(key, (cost.clone(), hows[hi].clone()));
            self.order.push(key);
            let (s, top) = key;
            if goal.is_some_and(|g| g(s)) {
                return;
            }
            for &ei in &m.out[s] {
                let e = &m.edges[ei];
                let step = cost.then_label(e.label);
                let mut offer = |c: Cost, k: NodeKey, h: NodeHow| {
                    if !self.nodes.contains_key(&k) {
                        hows.push(h);
                        heap.push(Reverse((c, k, hows.len() - 1)));
                    }
                };
                match (e.kind, e.slot) {
                    (TransitionKind::Simple | TransitionKind::Silent, _) => {
                        offer(step, (e.dst, top), NodeHow::Step(ei, key));
                    }
                    (TransitionKind::Push, Slot::Sym(v)) => {
                        for &r in self.sums_from.get(&(e.dst, v)).into_iter().flatten() {
                            let sk = (e.dst, v, r);
                            let c = step.then(&self.sums[&sk].0);
                            offer(c, (r, top), NodeHow::PushOver(ei, key, sk));
                        }
                        offer(step, (e.dst, Some(v)), NodeHow::PushInto(ei, key));
                    }
                    (TransitionKind::Pop, Slot::Bottom) if top.is_none() => {
                        offer(step, (e.dst, None), NodeHow::Step(ei, key));
                    }
                    _ => {}
                }
            }
        }
    }

    /// Reached (state, top) pairs, cheapest first.
    pub fn nodes(&self) -> &[NodeKey] {
        &self.order
    }

    pub fn is_live(&self, key: NodeKey) -> bool {
        self.nodes.contains_key(&key)
    }

    pub fn live_states(&self) -> BTreeSet<usize> {
        self.order.iter().map(|k| k.0).collect()
    }

    #[cfg(test)]
    pub fn cost(&self, key: NodeKey) -> Option<&Cost> {
        self.nodes.get(&key).map(|x| &x.0)
    }

    /// Edge indices of the cheapest run reaching `key`.
    pub fn run_to(&self, key: NodeKey) -> Option<Vec<usize>> {
        let mut rev: Vec<Vec<usize>> = Vec::new();
        let mut cur = key;
        loop {
            let (_, how) = self.nodes.get(&cur)?;
            match how {
                NodeHow::Start => break,
                NodeHow::Step(e, prev) | NodeHow::PushInto(e, prev) => {
                    rev.push(vec![*e]);
                    cur = *prev;
                }
                NodeHow::PushOver(e, prev, sk) => {
                    let mut seg = vec![*e];
                    self.expand(*sk, &mut seg);
                    rev.push(seg);
                    cur = *prev;
                }
            }
        }
        Some(rev.into_iter().rev().flatten().collect())
    }

    fn expand(&self, key: SumKey, out: &mut Vec<usize>) {
        // Explicit stack: summaries can nest as deep as the run is long.
        let mut todo = vec![key];
        while let Some(k) = todo.pop() {
            match &self.sums[&k].1 {
                SumHow::Pop(e) => out.push(*e),
                SumHow::Step(e, next) => {
                    out.push(*e);
                    todo.push(*next);
                }
                SumHow::Push(e, inner, after) => {
                    out.push(*e);
                    todo.push(*after);
                    todo.push(*inner);
                }
            }
        }
    }

    pub fn transitions(&self, run: &[usize]) -> Vec<Transition> {
        run.iter().map(|&e| self.m.transitions[e].clone()).collect()
    }
}

/// Result of contracting a VPTS, with a run exercising every kept pop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contraction {
    pub vpts: Vpts,
    /// For each kept pop transition, a run from an initial configuration that
    /// ends with it.
    pub pop_witnesses: BTreeMap<Transition, Vec<Transition>>,
}

impl Vpts {
    /// Keeps only the transitions some run can take, then the states
    /// reachable over them.
    pub fn contract(&self) -> Vpts {
        self.contract_with_witnesses().vpts
    }

    pub fn contract_with_witnesses(&self) -> Contraction {
        let m = Machine::compile(&self.induced_vpa());
        let analysis = Analysis::new(&m);
        let live = analysis.live_states();
        let mut kept = BTreeSet::new();
        let mut pop_witnesses = BTreeMap::new();
        for (i, e) in m.edges.iter().enumerate() {
            let keep = match (e.kind, e.slot) {
                (TransitionKind::Pop, Slot::Sym(w)) => analysis.is_live((e.src, Some(w))),
                (TransitionKind::Pop, Slot::Bottom) => analysis.is_live((e.src, None)),
                _ => live.contains(&e.src),
            };
            if !keep {
                continue;
            }
            let t = m.transitions[i].clone();
            if e.kind == TransitionKind::Pop {
                let top = match e.slot {
                    Slot::Sym(w) => Some(w),
                    _ => None,
                };
                let mut run = analysis.run_to((e.src, top)).expect("live node has a run");
                run.push(i);
                pop_witnesses.insert(t.clone(), analysis.transitions(&run));
            }
            kept.insert(t);
        }
        let pruned = Vpts {
            transitions: kept,
            ..self.clone()
        };
        let reach = pruned.induced_vpa().graph_reachable();
        let vpts = Vpts {
            alphabet: self.alphabet.clone(),
            states: self.states.intersection(&reach).cloned().collect(),
            initial: self.initial.clone(),
            stack_alphabet: self.stack_alphabet.clone(),
            transitions: pruned
                .transitions
                .into_iter()
                .filter(|t| reach.contains(&t.source))
                .collect(),
        };
        Contraction {
            vpts,
            pop_witnesses,
        }
    }
}
