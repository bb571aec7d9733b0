//! Automaton files: JSON with a format tag and a version.
//!
//! ```json
//! {
//!   "format": "geodesic-automaton",
//!   "version": 1,
//!   "delta": 1,
//!   "k": 1,
//!   "alphabet": [{"name": "a", "weight": 1}, {"name": "A", "weight": 1}],
//!   "start": 0,
//!   "transitions": [[1, 2], [1, null], [null, 2]]
//! }
//! ```
//!
//! `transitions[s][a]` is the target of state `s` on letter `a`, or null
//! for the fail state. Every listed state accepts.

use geodesic_core::automaton::GeodesicAutomaton;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ToolError};

pub const FORMAT: &str = "geodesic-automaton";
pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetEntry {
    pub name: String,
    pub weight: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub format: String,
    pub version: u32,
    pub delta: u32,
    pub k: u32,
    pub alphabet: Vec<AlphabetEntry>,
    pub start: u32,
    pub transitions: Vec<Vec<Option<u32>>>,
}

impl AutomatonFile {
    pub fn from_automaton(aut: &GeodesicAutomaton) -> Self {
        let letters = aut.num_letters();
        let fail = aut.fail();
        let transitions = aut
            .transitions()
            .chunks(letters)
            .map(|row| row.iter().map(|&t| (t != fail).then_some(t)).collect())
            .collect();
        AutomatonFile {
            format: FORMAT.into(),
            version: VERSION,
            delta: aut.delta(),
            k: aut.k(),
            alphabet: aut
                .letter_names()
                .iter()
                .zip(aut.weights())
                .map(|(name, &weight)| AlphabetEntry { name: name.clone(), weight })
                .collect(),
            start: aut.start(),
            transitions,
        }
    }

    pub fn to_automaton(&self) -> Result<GeodesicAutomaton> {
        if self.format != FORMAT {
            return Err(ToolError::Config(format!("not an automaton file (format `{}`)", self.format)));
        }
        if self.version != VERSION {
            return Err(ToolError::Config(format!("unsupported automaton file version {}", self.version)));
        }
        let letters = self.alphabet.len();
        let fail = self.transitions.len() as u32;
        let mut flat = Vec::with_capacity(self.transitions.len() * letters);
        for (s, row) in self.transitions.iter().enumerate() {
            if row.len() != letters {
                return Err(ToolError::Config(format!("state {s} has {} transitions, expected {letters}", row.len())));
            }
            flat.extend(row.iter().map(|t| t.unwrap_or(fail)));
        }
        Ok(GeodesicAutomaton::from_parts(
            self.delta,
            self.k,
            self.alphabet.iter().map(|e| e.name.clone()).collect(),
            self.alphabet.iter().map(|e| e.weight).collect(),
            flat,
            self.start,
        )?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("automaton files serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ToolError::Config(format!("bad automaton file: {e}")))
    }
}
