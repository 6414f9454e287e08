//! Visibly pushdown automata: data model, moves, membership and determinism.

mod determinism;
mod epsilon;
pub(crate) mod machine;

use std::collections::BTreeSet;
use std::fmt;

use crate::alphabet::{PartitionedAlphabet, SymbolKind};
use crate::error::{StepError, UnknownSymbol};

pub use determinism::DeterminismViolation;

/// Action label of a transition. `Silent` is ε in a VPA and ς in a VPTS.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Symbol(String),
    Silent,
}

impl Label {
    pub fn symbol(&self) -> Option<&str> {
        match self {
            Label::Symbol(s) => Some(s),
            Label::Silent => None,
        }
    }

    pub fn is_silent(&self) -> bool {
        matches!(self, Label::Silent)
    }
}

/// Stack component of a transition: a symbol of Γ, the bottom marker ⊥
/// (pops only) or the placeholder ⊲ (simple and silent moves).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackSymbol {
    Bottom,
    Any,
    Symbol(String),
}

impl fmt::Display for StackSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackSymbol::Bottom => f.write_str("⊥"),
            StackSymbol::Any => f.write_str("⊲"),
            StackSymbol::Symbol(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TransitionKind {
    Push,
    Pop,
    Simple,
    Silent,
}

impl TransitionKind {
    /// The kind a visible label of the given partition forces.
    pub fn for_symbol(kind: SymbolKind) -> Self {
        match kind {
            SymbolKind::Call => TransitionKind::Push,
            SymbolKind::Return => TransitionKind::Pop,
            SymbolKind::Internal => TransitionKind::Simple,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transition {
    pub source: String,
    pub label: Label,
    pub stack: StackSymbol,
    pub target: String,
    pub kind: TransitionKind,
}

impl Transition {
    pub fn push(source: &str, label: &str, stack: &str, target: &str) -> Self {
        Transition {
            source: source.into(),
            label: Label::Symbol(label.into()),
            stack: StackSymbol::Symbol(stack.into()),
            target: target.into(),
            kind: TransitionKind::Push,
        }
    }

    pub fn pop(source: &str, label: &str, stack: &str, target: &str) -> Self {
        Transition {
            source: source.into(),
            label: Label::Symbol(label.into()),
            stack: StackSymbol::Symbol(stack.into()),
            target: target.into(),
            kind: TransitionKind::Pop,
        }
    }

    pub fn pop_bottom(source: &str, label: &str, target: &str) -> Self {
        Transition {
            source: source.into(),
            label: Label::Symbol(label.into()),
            stack: StackSymbol::Bottom,
            target: target.into(),
            kind: TransitionKind::Pop,
        }
    }

    pub fn simple(source: &str, label: &str, target: &str) -> Self {
        Transition {
            source: source.into(),
            label: Label::Symbol(label.into()),
            stack: StackSymbol::Any,
            target: target.into(),
            kind: TransitionKind::Simple,
        }
    }

    pub fn silent(source: &str, target: &str) -> Self {
        Transition {
            source: source.into(),
            label: Label::Silent,
            stack: StackSymbol::Any,
            target: target.into(),
            kind: TransitionKind::Silent,
        }
    }

    pub fn is_silent(&self) -> bool {
        self.kind == TransitionKind::Silent
    }

    /// Same transition with both endpoints renamed.
    pub fn map_states(&self, mut f: impl FnMut(&str) -> String) -> Self {
        Transition {
            source: f(&self.source),
            target: f(&self.target),
            ..self.clone()
        }
    }

    /// Rendering with a chosen glyph for the silent label.
    pub fn describe(&self, silent: &str) -> String {
        let label = match &self.label {
            Label::Symbol(s) => s.as_str(),
            Label::Silent => silent,
        };
        match self.kind {
            TransitionKind::Push => {
                format!(
                    "{} -{label}/push {}-> {}",
                    self.source, self.stack, self.target
                )
            }
            TransitionKind::Pop => {
                format!(
                    "{} -{label}/pop {}-> {}",
                    self.source, self.stack, self.target
                )
            }
            TransitionKind::Simple | TransitionKind::Silent => {
                format!("{} -{label}-> {}", self.source, self.target)
            }
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe("ε"))
    }
}

/// A state together with the stack contents above ⊥, top first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: String,
    pub stack: Vec<String>,
}

impl Configuration {
    pub fn initial(state: &str) -> Self {
        Configuration {
            state: state.into(),
            stack: Vec::new(),
        }
    }

    pub fn top(&self) -> Option<&str> {
        self.stack.first().map(String::as_str)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}⊥)", self.state, self.stack.concat())
    }
}

/// One well-formedness problem, with where it was found.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Violation {
    pub locus: String,
    pub message: String,
}

impl Violation {
    pub(crate) fn new(locus: impl Into<String>, message: impl Into<String>) -> Self {
        Violation {
            locus: locus.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.locus, self.message)
    }
}

/// `(S, S_in, A, Γ, ρ, F)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Vpa {
    pub alphabet: PartitionedAlphabet,
    pub states: BTreeSet<String>,
    pub initial: BTreeSet<String>,
    pub stack_alphabet: BTreeSet<String>,
    pub transitions: BTreeSet<Transition>,
    pub finals: BTreeSet<String>,
}

fn strings<I>(items: I) -> BTreeSet<String>
where
    I: IntoIterator,
    I::Item: Into<String>,
{
    items.into_iter().map(Into::into).collect()
}

impl Vpa {
    pub fn new<S, I, G, T, F>(
        alphabet: PartitionedAlphabet,
        states: S,
        initial: I,
        stack_alphabet: G,
        transitions: T,
        finals: F,
    ) -> Self
    where
        S: IntoIterator,
        S::Item: Into<String>,
        I: IntoIterator,
        I::Item: Into<String>,
        G: IntoIterator,
        G::Item: Into<String>,
        T: IntoIterator<Item = Transition>,
        F: IntoIterator,
        F::Item: Into<String>,
    {
        Vpa {
            alphabet,
            states: strings(states),
            initial: strings(initial),
            stack_alphabet: strings(stack_alphabet),
            transitions: transitions.into_iter().collect(),
            finals: strings(finals),
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = self
            .alphabet
            .violations()
            .into_iter()
            .map(|m| Violation::new("alphabet", m))
            .collect();
        for z in &self.stack_alphabet {
            if crate::alphabet::is_reserved(z) || z.is_empty() {
                out.push(Violation::new(
                    "stack alphabet",
                    format!("{z:?} cannot be a stack symbol"),
                ));
            }
        }
        for s in self.initial.difference(&self.states) {
            out.push(Violation::new("initial", format!("unknown state {s:?}")));
        }
        for s in self.finals.difference(&self.states) {
            out.push(Violation::new("finals", format!("unknown state {s:?}")));
        }
        for t in &self.transitions {
            let locus = format!("transition {t}");
            for end in [&t.source, &t.target] {
                if !self.states.contains(end) {
                    out.push(Violation::new(&locus, format!("unknown state {end:?}")));
                }
            }
            if let Some(msg) = self.kind_problem(t) {
                out.push(Violation::new(&locus, msg));
            }
        }
        out
    }

    fn kind_problem(&self, t: &Transition) -> Option<String> {
        let in_gamma = |z: &StackSymbol| match z {
            StackSymbol::Symbol(s) => self.stack_alphabet.contains(s),
            _ => false,
        };
        let sym = match (&t.label, t.kind) {
            (Label::Silent, TransitionKind::Silent) => {
                return (t.stack != StackSymbol::Any)
                    .then(|| "silent transition must use the placeholder".to_string());
            }
            (Label::Silent, kind) => {
                return Some(format!("{kind:?} transition without a visible label"));
            }
            (Label::Symbol(_), TransitionKind::Silent) => {
                return Some("silent transition carries a visible label".into());
            }
            (Label::Symbol(s), _) => s,
        };
        let Some(sk) = self.alphabet.kind(sym) else {
            return Some(format!("label {sym:?} is not in the alphabet"));
        };
        let kind = t.kind;
        if TransitionKind::for_symbol(sk) != kind {
            return Some(format!(
                "{kind:?} transition labeled by {sk} symbol {sym:?}"
            ));
        }
        let ok = match kind {
            TransitionKind::Push => in_gamma(&t.stack),
            TransitionKind::Pop => t.stack == StackSymbol::Bottom || in_gamma(&t.stack),
            _ => t.stack == StackSymbol::Any,
        };
        (!ok).then(|| format!("stack symbol {} not allowed for {kind:?}", t.stack))
    }

    pub fn transitions_from<'a>(
        &'a self,
        state: &'a str,
    ) -> impl Iterator<Item = &'a Transition> + 'a {
        self.transitions.iter().filter(move |t| t.source == state)
    }

    pub fn has_silent_moves(&self) -> bool {
        self.transitions.iter().any(Transition::is_silent)
    }

    /// Applies `t` to `c`.
    pub fn step(&self, c: &Configuration, t: &Transition) -> Result<Configuration, StepError> {
        if t.source != c.state {
            return Err(StepError::WrongSource {
                expected: t.source.clone(),
                found: c.state.clone(),
            });
        }
        let mut stack = c.stack.clone();
        match (t.kind, &t.stack) {
            (TransitionKind::Push, StackSymbol::Symbol(z)) => stack.insert(0, z.clone()),
            (TransitionKind::Pop, StackSymbol::Symbol(z)) => match stack.first() {
                None => {
                    return Err(StepError::EmptyStack {
                        expected: z.clone(),
                    })
                }
                Some(top) if top != z => {
                    return Err(StepError::TopMismatch {
                        expected: z.clone(),
                        found: top.clone(),
                    })
                }
                Some(_) => {
                    stack.remove(0);
                }
            },
            (TransitionKind::Pop, StackSymbol::Bottom) => {
                if !stack.is_empty() {
                    return Err(StepError::StackNotEmpty { depth: stack.len() });
                }
            }
            (TransitionKind::Simple | TransitionKind::Silent, StackSymbol::Any) => {}
            _ => return Err(StepError::Malformed(t.to_string())),
        }
        Ok(Configuration {
            state: t.target.clone(),
            stack,
        })
    }

    /// Membership of `word` in `L(self)`.
    pub fn accepts<S: AsRef<str>>(&self, word: &[S]) -> Result<bool, UnknownSymbol> {
        let m = machine::Machine::compile(self);
        let word = m.encode(word)?;
        Ok(m.accepts(&word))
    }

    /// Configurations reachable after consuming `word`, closed under silent moves.
    pub fn configurations_after<S: AsRef<str>>(
        &self,
        word: &[S],
    ) -> Result<BTreeSet<Configuration>, UnknownSymbol> {
        let m = machine::Machine::compile(self);
        let word = m.encode(word)?;
        Ok(m.run(&word).into_iter().map(|c| m.decode(&c)).collect())
    }

    /// Same automaton with every state renamed through `f`.
    pub fn rename_states(&self, mut f: impl FnMut(&str) -> String) -> Vpa {
        let mut map = |s: &String| f(s);
        let states = self.states.iter().map(&mut map).collect();
        let initial = self.initial.iter().map(&mut map).collect();
        let finals = self.finals.iter().map(&mut map).collect();
        let transitions = self
            .transitions
            .iter()
            .map(|t| Transition {
                source: map(&t.source),
                target: map(&t.target),
                ..t.clone()
            })
            .collect();
        Vpa {
            alphabet: self.alphabet.clone(),
            states,
            initial,
            stack_alphabet: self.stack_alphabet.clone(),
            transitions,
            finals,
        }
    }
}
