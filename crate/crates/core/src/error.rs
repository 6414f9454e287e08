use thiserror::Error;

/// Why a single move could not be taken.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("transition leaves {expected:?} but the configuration is in {found:?}")]
    WrongSource { expected: String, found: String },
    #[error("pop of {expected:?} on an empty stack")]
    EmptyStack { expected: String },
    #[error("pop of {expected:?} but the stack top is {found:?}")]
    TopMismatch { expected: String, found: String },
    #[error("pop on the bottom marker requires an empty stack, found {depth} symbol(s)")]
    StackNotEmpty { depth: usize },
    #[error("malformed transition: {0}")]
    Malformed(String),
}

/// A word mentions a symbol the automaton does not know.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("symbol {0:?} is not in the alphabet")]
pub struct UnknownSymbol(pub String);

/// Precondition failures of the constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{operand} is not deterministic: {reason}")]
    NotDeterministic { operand: String, reason: String },
    #[error("alphabets differ: {0}")]
    AlphabetMismatch(String),
    #[error("induced VPTS is defined only when all states are final (non-final: {0:?})")]
    NotAllFinal(Vec<String>),
    #[error("{operand} is invalid: {}", .violations.join("; "))]
    Invalid {
        operand: String,
        violations: Vec<String>,
    },
    #[error("generated name {0:?} collides with an existing name")]
    NameCollision(String),
}
