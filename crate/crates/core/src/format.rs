//! JSON interchange format.
//!
//! Output is canonical: states, symbols and transitions are sorted, so the
//! same automaton always serializes to the same bytes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{IoPartition, PartitionedAlphabet};
use crate::vpa::{Label, StackSymbol, Transition, TransitionKind, Vpa};
use crate::vpts::{Iovpts, Vpts};

pub const EPS: &str = "_EPS_";
pub const TAU: &str = "_TAU_";
pub const BOTTOM: &str = "_BOTTOM_";
pub const ANY: &str = "_ANY_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocumentKind {
    Vpa,
    Vpts,
    Iovpts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDocument {
    pub from: String,
    pub label: String,
    pub stack: String,
    pub to: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub kind: DocumentKind,
    pub alphabet: PartitionedAlphabet,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub io: Option<IoPartition>,
    pub states: Vec<String>,
    pub initial: Vec<String>,
    pub stack: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finals: Option<Vec<String>>,
    pub transitions: Vec<TransitionDocument>,
}

/// A parsed document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Automaton {
    Vpa(Vpa),
    Vpts(Vpts),
    Iovpts(Iovpts),
}

impl Automaton {
    pub fn kind(&self) -> DocumentKind {
        match self {
            Automaton::Vpa(_) => DocumentKind::Vpa,
            Automaton::Vpts(_) => DocumentKind::Vpts,
            Automaton::Iovpts(_) => DocumentKind::Iovpts,
        }
    }

    pub fn alphabet(&self) -> &PartitionedAlphabet {
        match self {
            Automaton::Vpa(a) => &a.alphabet,
            Automaton::Vpts(v) => &v.alphabet,
            Automaton::Iovpts(v) => &v.vpts.alphabet,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{locus}: {message}")]
    Content { locus: String, message: String },
}

fn content(locus: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Content {
        locus: locus.into(),
        message: message.into(),
    }
}

fn silent_spelling(kind: DocumentKind) -> &'static str {
    match kind {
        DocumentKind::Vpa => EPS,
        _ => TAU,
    }
}

fn transition_doc(t: &Transition, kind: DocumentKind) -> TransitionDocument {
    TransitionDocument {
        from: t.source.clone(),
        label: match &t.label {
            Label::Symbol(s) => s.clone(),
            Label::Silent => silent_spelling(kind).into(),
        },
        stack: match &t.stack {
            StackSymbol::Bottom => BOTTOM.into(),
            StackSymbol::Any => ANY.into(),
            StackSymbol::Symbol(s) => s.clone(),
        },
        to: t.target.clone(),
    }
}

fn list(s: &BTreeSet<String>) -> Vec<String> {
    s.iter().cloned().collect()
}

impl AutomatonDocument {
    pub fn from_vpa(a: &Vpa) -> Self {
        AutomatonDocument {
            kind: DocumentKind::Vpa,
            alphabet: a.alphabet.clone(),
            io: None,
            states: list(&a.states),
            initial: list(&a.initial),
            stack: list(&a.stack_alphabet),
            finals: Some(list(&a.finals)),
            transitions: a
                .transitions
                .iter()
                .map(|t| transition_doc(t, DocumentKind::Vpa))
                .collect(),
        }
    }

    pub fn from_vpts(v: &Vpts) -> Self {
        AutomatonDocument {
            kind: DocumentKind::Vpts,
            alphabet: v.alphabet.clone(),
            io: None,
            states: list(&v.states),
            initial: list(&v.initial),
            stack: list(&v.stack_alphabet),
            finals: None,
            transitions: v
                .transitions
                .iter()
                .map(|t| transition_doc(t, DocumentKind::Vpts))
                .collect(),
        }
    }

    pub fn from_iovpts(v: &Iovpts) -> Self {
        AutomatonDocument {
            kind: DocumentKind::Iovpts,
            io: Some(v.io.clone()),
            ..Self::from_vpts(&v.vpts)
        }
    }

    pub fn from_automaton(a: &Automaton) -> Self {
        match a {
            Automaton::Vpa(a) => Self::from_vpa(a),
            Automaton::Vpts(v) => Self::from_vpts(v),
            Automaton::Iovpts(v) => Self::from_iovpts(v),
        }
    }

    fn transition(&self, i: usize, d: &TransitionDocument) -> Result<Transition, FormatError> {
        let locus = format!("transitions[{i}] ({} -{}-> {})", d.from, d.label, d.to);
        let silent = d.label == silent_spelling(self.kind);
        let wrong_silent = match self.kind {
            DocumentKind::Vpa => TAU,
            _ => EPS,
        };
        if d.label == wrong_silent {
            return Err(content(
                locus,
                format!("{wrong_silent} is not a {:?} label", self.kind),
            ));
        }
        let stack = match d.stack.as_str() {
            BOTTOM => StackSymbol::Bottom,
            ANY => StackSymbol::Any,
            s => StackSymbol::Symbol(s.to_string()),
        };
        let (label, kind) = if silent {
            (Label::Silent, TransitionKind::Silent)
        } else {
            let sk = self.alphabet.kind(&d.label).ok_or_else(|| {
                content(
                    &locus,
                    format!("label {:?} is not in the alphabet", d.label),
                )
            })?;
            (
                Label::Symbol(d.label.clone()),
                TransitionKind::for_symbol(sk),
            )
        };
        let ok = match kind {
            TransitionKind::Push => matches!(stack, StackSymbol::Symbol(_)),
            TransitionKind::Pop => !matches!(stack, StackSymbol::Any),
            _ => stack == StackSymbol::Any,
        };
        if !ok {
            return Err(content(
                locus,
                format!("stack {:?} does not fit a {kind:?} move", d.stack),
            ));
        }
        Ok(Transition {
            source: d.from.clone(),
            label,
            stack,
            target: d.to.clone(),
            kind,
        })
    }

    pub fn to_automaton(&self) -> Result<Automaton, FormatError> {
        let transitions = self
            .transitions
            .iter()
            .enumerate()
            .map(|(i, d)| self.transition(i, d))
            .collect::<Result<BTreeSet<_>, _>>()?;
        let set = |v: &[String]| v.iter().cloned().collect::<BTreeSet<_>>();
        let vpts = || Vpts {
            alphabet: self.alphabet.clone(),
            states: set(&self.states),
            initial: set(&self.initial),
            stack_alphabet: set(&self.stack),
            transitions: transitions.clone(),
        };
        match self.kind {
            DocumentKind::Vpa => {
                if self.io.is_some() {
                    return Err(content("io", "only iovpts documents carry an io split"));
                }
                let finals = self
                    .finals
                    .as_ref()
                    .ok_or_else(|| content("finals", "a vpa document needs finals"))?;
                Ok(Automaton::Vpa(Vpa {
                    alphabet: self.alphabet.clone(),
                    states: set(&self.states),
                    initial: set(&self.initial),
                    stack_alphabet: set(&self.stack),
                    transitions: transitions.clone(),
                    finals: set(finals),
                }))
            }
            DocumentKind::Vpts | DocumentKind::Iovpts => {
                if self.finals.is_some() {
                    return Err(content("finals", "only vpa documents carry finals"));
                }
                match (self.kind, &self.io) {
                    (DocumentKind::Vpts, None) => Ok(Automaton::Vpts(vpts())),
                    (DocumentKind::Vpts, Some(_)) => {
                        Err(content("io", "only iovpts documents carry an io split"))
                    }
                    (_, Some(io)) => Ok(Automaton::Iovpts(Iovpts::new(vpts(), io.clone()))),
                    (_, None) => Err(content("io", "an iovpts document needs an io split")),
                }
            }
        }
    }
}

pub fn parse(text: &str) -> Result<Automaton, FormatError> {
    let doc: AutomatonDocument =
        serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
    doc.to_automaton()
}

/// Pretty JSON with a trailing newline.
pub fn to_json(a: &Automaton) -> String {
    let mut s = serde_json::to_string_pretty(&AutomatonDocument::from_automaton(a))
        .expect("documents serialize");
    s.push('\n');
    s
}

pub fn vpa_to_json(a: &Vpa) -> String {
    to_json(&Automaton::Vpa(a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn round_trips() {
        for a in [
            Automaton::Vpa(samples::anbn()),
            Automaton::Vpa(samples::spec_complement_drawn()),
            Automaton::Vpts(samples::drink_dispenser().vpts),
            Automaton::Iovpts(samples::drink_dispenser()),
        ] {
            let text = to_json(&a);
            let back = parse(&text).unwrap();
            assert_eq!(back, a);
            assert_eq!(to_json(&back), text);
        }
    }

    #[test]
    fn silent_spellings_follow_kind() {
        let text = to_json(&Automaton::Vpts(samples::drink_dispenser().vpts));
        assert!(text.contains("\"_TAU_\""));
        assert!(!text.contains("_EPS_"));
        let bad = text.replace("_TAU_", "_EPS_");
        assert!(matches!(parse(&bad), Err(FormatError::Content { .. })));
    }

    #[test]
    fn unknown_label_names_the_transition() {
        let text = vpa_to_json(&samples::anbn()).replace("\"label\": \"b\"", "\"label\": \"q\"");
        match parse(&text) {
            Err(FormatError::Content { locus, .. }) => {
                assert!(locus.starts_with("transitions["), "{locus}")
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn push_needs_a_stack_symbol() {
        let text = vpa_to_json(&samples::anbn()).replacen(
            "\"stack\": \"B\"",
            "\"stack\": \"_BOTTOM_\"",
            1,
        );
        assert!(parse(&text).is_err());
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(parse("{"), Err(FormatError::Json(_))));
    }

    #[test]
    fn vpa_without_finals_is_rejected() {
        let text = vpa_to_json(&samples::anbn());
        let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
        v.as_object_mut().unwrap().remove("finals");
        assert!(parse(&v.to_string()).is_err());
    }
}
