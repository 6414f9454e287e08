//! Visibly pushdown automata and transition systems, their closure
//! constructions, and (D,F)-visible conformance checking with witnesses.
//!
//! ```
//! use vpconf::samples;
//!
//! let a = samples::anbn();
//! assert!(a.accepts(&["a", "a", "b", "b"]).unwrap());
//! assert!(!a.accepts(&["a", "b", "b"]).unwrap());
//! ```

pub mod algebra;
pub mod alphabet;
pub mod conformance;
pub mod error;
pub mod format;
pub mod grammar;
pub mod oracle;
pub mod samples;
pub mod vpa;
pub mod vpts;

pub use algebra::{complement, intersect, make_non_blocking, product, union};
pub use alphabet::{IoPartition, PartitionedAlphabet, SymbolKind};
pub use conformance::{
    build_fault_model, check_conformance, is_empty_with_witness, passes_suite, Clause, Emptiness,
    FaultModel, Outcome, Verdict,
};
pub use error::{Error, StepError, UnknownSymbol};
pub use grammar::{build_trace_grammar, TraceGrammar};
pub use vpa::{Configuration, Label, StackSymbol, Transition, TransitionKind, Violation, Vpa};
pub use vpts::{Iovpts, Vpts};
