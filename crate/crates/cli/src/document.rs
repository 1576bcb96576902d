//! Versioned TOML documents describing a Mealy automaton.
//!
//! ```toml
//! format = "mealy-automaton/1"
//! name = "A"
//! alphabet = ["0", "1"]
//! states = ["a", "b", "c"]
//!
//! [[transition]]
//! state = "a"
//! input = "0"
//! next = "c"
//! out = "1"
//! ```
//!
//! `next` is the transition function and `out` the output function. Records
//! are written in state order, then letter order.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use automaton_groups::{Alphabet, MealyMachine};

use crate::CliError;

pub const FORMAT: &str = "mealy-automaton/1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonDocument {
    pub format: String,
    pub name: String,
    pub alphabet: Vec<String>,
    pub states: Vec<String>,
    #[serde(rename = "transition", default)]
    pub transitions: Vec<Transition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transition {
    pub state: String,
    pub input: String,
    pub next: String,
    pub out: String,
}

impl AutomatonDocument {
    pub fn from_machine(m: &MealyMachine) -> Self {
        let letters = m.alphabet().letters();
        let transitions = (0..m.num_states())
            .flat_map(|q| {
                (0..letters.len()).map(move |x| Transition {
                    state: m.state_name(q).to_owned(),
                    input: letters[x].clone(),
                    next: m.state_name(m.next(q, x)).to_owned(),
                    out: letters[m.out(q, x)].clone(),
                })
            })
            .collect();
        AutomatonDocument {
            format: FORMAT.to_owned(),
            name: m.name().to_owned(),
            alphabet: letters.to_vec(),
            states: m.states().to_vec(),
            transitions,
        }
    }

    /// Validates the document and builds the machine. Every (state, input)
    /// pair must appear exactly once.
    pub fn to_machine(&self) -> Result<MealyMachine, CliError> {
        if self.format != FORMAT {
            return Err(CliError::Document(format!(
                "unsupported format `{}` (expected `{FORMAT}`)",
                self.format
            )));
        }
        let alphabet = Alphabet::new(self.alphabet.iter().cloned())?;
        let (nq, nx) = (self.states.len(), alphabet.len());
        let state = |name: &str| {
            self.states
                .iter()
                .position(|s| s == name)
                .ok_or_else(|| CliError::Document(format!("unknown state `{name}`")))
        };
        let letter = |name: &str| {
            alphabet
                .index(name)
                .ok_or_else(|| CliError::Document(format!("unknown letter `{name}`")))
        };
        if self.transitions.len() != nq * nx {
            return Err(CliError::Document(format!(
                "expected {} transition records ({nq} states × {nx} letters), found {}",
                nq * nx,
                self.transitions.len()
            )));
        }
        let mut next = vec![0; nq * nx];
        let mut out = vec![0; nq * nx];
        let mut seen = HashSet::new();
        for t in &self.transitions {
            let (q, x) = (state(&t.state)?, letter(&t.input)?);
            if !seen.insert((q, x)) {
                return Err(CliError::Document(format!(
                    "duplicate transition for state `{}` on `{}`",
                    t.state, t.input
                )));
            }
            next[q * nx + x] = state(&t.next)?;
            out[q * nx + x] = letter(&t.out)?;
        }
        Ok(MealyMachine::new(
            self.name.clone(),
            alphabet,
            self.states.clone(),
            next,
            out,
        )?)
    }

    pub fn to_toml(&self) -> Result<String, CliError> {
        toml::to_string(self).map_err(|e| CliError::Document(e.to_string()))
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Document(e.to_string()))
    }
}

/// Serializes a machine as a document.
pub fn write_machine(m: &MealyMachine) -> Result<String, CliError> {
    AutomatonDocument::from_machine(m).to_toml()
}

/// Parses and validates a document.
pub fn read_machine(text: &str) -> Result<MealyMachine, CliError> {
    AutomatonDocument::parse(text)?.to_machine()
}

#[cfg(test)]
mod tests {
    use super::*;
    use automaton_groups::families::{aleshin, make_bellaterra, make_u};
    use automaton_groups::Scope;

    #[test]
    fn round_trip_is_byte_identical() {
        for m in [
            aleshin(),
            make_bellaterra(0).unwrap(),
            make_u(&Scope::single(2)).unwrap(),
        ] {
            let text = write_machine(&m).unwrap();
            assert!(text.starts_with(&format!("format = \"{FORMAT}\"\n")));
            let back = read_machine(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(write_machine(&back).unwrap(), text);
        }
    }

    #[test]
    fn rejects_malformed_documents() {
        let good = write_machine(&aleshin()).unwrap();
        let cases = [
            good.replace(FORMAT, "mealy-automaton/0"),
            good.replacen("next = \"c\"", "next = \"z\"", 1),
            good.replacen("out = \"1\"", "out = \"7\"", 1),
            good.replacen("input = \"1\"", "input = \"0\"", 1),
            good.replacen(
                "[[transition]]\nstate = \"a\"\ninput = \"0\"\nnext = \"c\"\nout = \"1\"\n",
                "",
                1,
            ),
            good.replacen("name = ", "colour = \"red\"\nname = ", 1),
            "not toml at all = = =".to_owned(),
        ];
        for (i, text) in cases.iter().enumerate() {
            assert_ne!(text, &good, "case {i} did not change the document");
            assert!(read_machine(text).is_err(), "case {i} accepted");
        }
    }
}
