//! Action alphabets split by stack discipline.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Spellings that can never be used as action symbols.
pub const RESERVED: [&str; 8] = ["⊥", "⊲", "ε", "ς", "_BOTTOM_", "_ANY_", "_EPS_", "_TAU_"];

pub fn is_reserved(sym: &str) -> bool {
    RESERVED.contains(&sym)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    Call,
    Return,
    Internal,
}

impl fmt::Display for SymbolKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymbolKind::Call => "call",
            SymbolKind::Return => "return",
            SymbolKind::Internal => "internal",
        })
    }
}

/// `L = L_c ∪ L_r ∪ L_i`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PartitionedAlphabet {
    pub calls: BTreeSet<String>,
    pub returns: BTreeSet<String>,
    pub internals: BTreeSet<String>,
}

impl PartitionedAlphabet {
    pub fn new<C, R, I>(calls: C, returns: R, internals: I) -> Self
    where
        C: IntoIterator,
        C::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
        I: IntoIterator,
        I::Item: Into<String>,
    {
        PartitionedAlphabet {
            calls: calls.into_iter().map(Into::into).collect(),
            returns: returns.into_iter().map(Into::into).collect(),
            internals: internals.into_iter().map(Into::into).collect(),
        }
    }

    /// Kind of `sym`. Calls win over returns over internals when the sets
    /// overlap, which only happens in invalid alphabets.
    pub fn kind(&self, sym: &str) -> Option<SymbolKind> {
        if self.calls.contains(sym) {
            Some(SymbolKind::Call)
        } else if self.returns.contains(sym) {
            Some(SymbolKind::Return)
        } else if self.internals.contains(sym) {
            Some(SymbolKind::Internal)
        } else {
            None
        }
    }

    pub fn contains(&self, sym: &str) -> bool {
        self.kind(sym).is_some()
    }

    /// All symbols in canonical (sorted) order.
    pub fn symbols(&self) -> Vec<String> {
        let all: BTreeSet<&String> = self
            .calls
            .iter()
            .chain(&self.returns)
            .chain(&self.internals)
            .collect();
        all.into_iter().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.symbols().len()
    }

    pub fn is_empty(&self) -> bool {
        self.calls.is_empty() && self.returns.is_empty() && self.internals.is_empty()
    }

    /// Well-formedness problems, empty when the alphabet is valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let parts = [
            ("calls", &self.calls),
            ("returns", &self.returns),
            ("internals", &self.internals),
        ];
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                for sym in parts[i].1.intersection(parts[j].1) {
                    out.push(format!(
                        "symbol {sym:?} is in both {} and {}",
                        parts[i].0, parts[j].0
                    ));
                }
            }
        }
        for (name, set) in parts {
            for sym in set {
                if is_reserved(sym) {
                    out.push(format!("{name} contains reserved symbol {sym:?}"));
                }
                if sym.is_empty() {
                    out.push(format!("{name} contains the empty string"));
                }
            }
        }
        if self.is_empty() {
            out.push("alphabet is empty".to_string());
        }
        out
    }
}

/// Input/output split of an alphabet.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IoPartition {
    pub inputs: BTreeSet<String>,
    pub outputs: BTreeSet<String>,
}

impl IoPartition {
    pub fn new<I, O>(inputs: I, outputs: O) -> Self
    where
        I: IntoIterator,
        I::Item: Into<String>,
        O: IntoIterator,
        O::Item: Into<String>,
    {
        IoPartition {
            inputs: inputs.into_iter().map(Into::into).collect(),
            outputs: outputs.into_iter().map(Into::into).collect(),
        }
    }

    pub fn violations(&self, alphabet: &PartitionedAlphabet) -> Vec<String> {
        let mut out = Vec::new();
        for sym in self.inputs.intersection(&self.outputs) {
            out.push(format!("symbol {sym:?} is both an input and an output"));
        }
        let all: BTreeSet<String> = alphabet.symbols().into_iter().collect();
        let io: BTreeSet<String> = self.inputs.union(&self.outputs).cloned().collect();
        for sym in all.difference(&io) {
            out.push(format!("symbol {sym:?} is neither an input nor an output"));
        }
        for sym in io.difference(&all) {
            out.push(format!("io symbol {sym:?} is not in the alphabet"));
        }
        out
    }
}
