#![allow(dead_code)]
//! Seeded random instances shared by the integration tests.

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use vpconf::{IoPartition, Iovpts, PartitionedAlphabet, Transition, Vpa, Vpts};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// One call `a`, one return `b`, one internal `c`.
pub fn abc() -> PartitionedAlphabet {
    PartitionedAlphabet::new(["a"], ["b"], ["c"])
}

/// Calls `a`, returns `b` and `x`.
pub fn abx() -> PartitionedAlphabet {
    PartitionedAlphabet::new(["a"], ["b", "x"], Vec::<String>::new())
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

/// Moves of a deterministic machine leaving `s`, each present with
/// probability `density`.
fn det_moves(
    rng: &mut StdRng,
    s: &str,
    states: &[String],
    alphabet: &PartitionedAlphabet,
    gamma: &[&str],
    density: f64,
) -> Vec<Transition> {
    let mut out = Vec::new();
    let pick = |rng: &mut StdRng| states.choose(rng).unwrap().clone();
    for c in &alphabet.calls {
        if rng.gen_bool(density) {
            let z = gamma.choose(rng).unwrap();
            out.push(Transition::push(s, c, z, &pick(rng)));
        }
    }
    for r in &alphabet.returns {
        for z in gamma {
            if rng.gen_bool(density) {
                out.push(Transition::pop(s, r, z, &pick(rng)));
            }
        }
        if rng.gen_bool(density) {
            out.push(Transition::pop_bottom(s, r, &pick(rng)));
        }
    }
    for i in &alphabet.internals {
        if rng.gen_bool(density) {
            out.push(Transition::simple(s, i, &pick(rng)));
        }
    }
    out
}

/// Deterministic ε-free VPA with `n` states and one initial state.
pub fn det_vpa(rng: &mut StdRng, prefix: &str, n: usize, alphabet: &PartitionedAlphabet) -> Vpa {
    let states = names(prefix, n);
    let gamma = ["A", "B"];
    let mut t = Vec::new();
    for s in &states {
        t.extend(det_moves(rng, s, &states, alphabet, &gamma, 0.6));
    }
    let finals: Vec<String> = states
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect();
    Vpa::new(
        alphabet.clone(),
        states.clone(),
        [states[0].clone()],
        gamma,
        t,
        finals,
    )
}

/// Deterministic VPA in which some states only have a single ε-move.
pub fn det_vpa_with_silent(rng: &mut StdRng, n: usize, alphabet: &PartitionedAlphabet) -> Vpa {
    let states = names("e", n);
    let gamma = ["A", "B"];
    let mut t = Vec::new();
    let mut silent = 0;
    for s in &states {
        if rng.gen_bool(0.4) || (silent == 0 && s == states.last().unwrap()) {
            silent += 1;
            t.push(Transition::silent(s, states.choose(rng).unwrap()));
        } else {
            t.extend(det_moves(rng, s, &states, alphabet, &gamma, 0.6));
        }
    }
    let finals: Vec<String> = states
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect();
    Vpa::new(
        alphabet.clone(),
        states.clone(),
        [states[0].clone()],
        gamma,
        t,
        finals,
    )
}

/// Random transition of any kind, ε included when `silent` is set.
pub fn any_move(
    rng: &mut StdRng,
    states: &[String],
    alphabet: &PartitionedAlphabet,
    gamma: &[&str],
    silent: bool,
) -> Transition {
    let s = states.choose(rng).unwrap();
    let t = states.choose(rng).unwrap();
    let syms = alphabet.symbols();
    let sym = syms.choose(rng).unwrap();
    if silent && rng.gen_bool(0.25) {
        return Transition::silent(s, t);
    }
    let z = gamma.choose(rng).unwrap();
    if alphabet.calls.contains(sym) {
        Transition::push(s, sym, z, t)
    } else if alphabet.returns.contains(sym) {
        if rng.gen_bool(0.3) {
            Transition::pop_bottom(s, sym, t)
        } else {
            Transition::pop(s, sym, z, t)
        }
    } else {
        Transition::simple(s, sym, t)
    }
}

/// Possibly nondeterministic VPA with `silent_edges` injected ε-moves.
pub fn nondet_vpa(
    rng: &mut StdRng,
    n: usize,
    alphabet: &PartitionedAlphabet,
    silent_edges: usize,
) -> Vpa {
    let states = names("p", n);
    let gamma = ["A", "B"];
    let mut t: Vec<Transition> = (0..n * 3)
        .map(|_| any_move(rng, &states, alphabet, &gamma, false))
        .collect();
    for _ in 0..silent_edges {
        t.push(Transition::silent(
            states.choose(rng).unwrap(),
            states.choose(rng).unwrap(),
        ));
    }
    let initial: Vec<String> = states
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect();
    let finals: Vec<String> = states
        .iter()
        .filter(|_| rng.gen_bool(0.4))
        .cloned()
        .collect();
    Vpa::new(alphabet.clone(), states, initial, gamma, t, finals)
}

/// Nondeterministic VPTS with ς-moves and no ς self-loops.
pub fn vpts(rng: &mut StdRng, n: usize, alphabet: &PartitionedAlphabet, moves: usize) -> Vpts {
    let states = names("s", n);
    let gamma = ["A", "B"];
    let mut t = Vec::new();
    while t.len() < moves {
        let m = any_move(rng, &states, alphabet, &gamma, true);
        if !(m.is_silent() && m.source == m.target) {
            t.push(m);
        }
    }
    Vpts::new(
        alphabet.clone(),
        states.clone(),
        [states[0].clone()],
        gamma,
        t,
    )
}

/// Deterministic VPTS in which every state is reachable.
pub fn det_vpts(rng: &mut StdRng, prefix: &str, n: usize, alphabet: &PartitionedAlphabet) -> Vpts {
    let a = det_vpa(rng, prefix, n, alphabet);
    Vpts::new(
        a.alphabet,
        a.states,
        a.initial,
        a.stack_alphabet,
        a.transitions,
    )
    .contract()
}

/// Inputs are the calls, outputs everything else.
pub fn io_for(alphabet: &PartitionedAlphabet) -> IoPartition {
    IoPartition::new(
        alphabet.calls.iter().cloned(),
        alphabet.returns.iter().chain(&alphabet.internals).cloned(),
    )
}

pub fn det_spec(rng: &mut StdRng, n: usize, alphabet: &PartitionedAlphabet) -> Iovpts {
    Iovpts::new(det_vpts(rng, "s", n, alphabet), io_for(alphabet))
}

/// A deterministic variant of `spec` with one transition added, removed or
/// redirected, and states renamed.
pub fn mutate(rng: &mut StdRng, spec: &Vpts) -> Vpts {
    let rename = |s: &str| format!("i{}", &s[1..]);
    let states: Vec<String> = spec.states.iter().cloned().collect();
    loop {
        let mut v = spec.clone();
        let list: Vec<Transition> = v.transitions.iter().cloned().collect();
        match rng.gen_range(0..4) {
            0 if !list.is_empty() => {
                v.transitions.remove(list.choose(rng).unwrap());
            }
            1 if !list.is_empty() => {
                let old = list.choose(rng).unwrap().clone();
                v.transitions.remove(&old);
                v.transitions.insert(Transition {
                    target: states.choose(rng).unwrap().clone(),
                    ..old
                });
            }
            2 => {}
            _ => {
                let gamma: Vec<&str> = v.stack_alphabet.iter().map(String::as_str).collect();
                let gamma = if gamma.is_empty() { vec!["A"] } else { gamma };
                let m = any_move(rng, &states, &v.alphabet, &gamma, false);
                if let vpconf::StackSymbol::Symbol(z) = &m.stack {
                    v.stack_alphabet.insert(z.clone());
                }
                v.transitions.insert(m);
            }
        }
        if v.is_deterministic() {
            return Vpts {
                states: v.states.iter().map(|s| rename(s)).collect(),
                initial: v.initial.iter().map(|s| rename(s)).collect(),
                transitions: v.transitions.iter().map(|t| t.map_states(rename)).collect(),
                ..v
            };
        }
    }
}

pub fn word(s: &str) -> Vec<String> {
    s.chars().map(|c| c.to_string()).collect()
}
