//! The concrete gates: CL, Toffoli, X, I and the small helpers (CNOT, NOT,
//! 3-line identity).
//!
//! The three-line gates share one shape. Lines 1 and 2 are controls and pass
//! through; line 3 is the target and is complemented when a control predicate
//! of `(x1, x2)` holds:
//!
//! | gate    | `x3'`               |
//! |---------|---------------------|
//! | CL      | `(x1 OR x2) XOR x3` |
//! | Toffoli | `(x1 AND x2) XOR x3`|
//! | X       | `(x1 XOR x2) XOR x3`|
//! | I       | `(x1 AND !x2) XOR x3`|
//!
//! [`build`] assembles the table by flipping the target bit of each index;
//! [`formula_output`] evaluates the closed form bit by bit. The two routes
//! are checked against each other and against [`golden_table`].

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::gate::{Gate, GateError, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GateId {
    Cl,
    Toffoli,
    X,
    I,
    Cnot,
    Not,
    Identity3,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown gate id {0:?} (expected one of cl, toffoli, x, i, cnot, not, identity3)")]
pub struct UnknownId(pub String);

impl GateId {
    pub const ALL: [GateId; 7] = [
        GateId::Cl,
        GateId::Toffoli,
        GateId::X,
        GateId::I,
        GateId::Cnot,
        GateId::Not,
        GateId::Identity3,
    ];

    /// The four three-line controlled-target gates.
    pub const THREE_LINE: [GateId; 4] = [GateId::Cl, GateId::Toffoli, GateId::X, GateId::I];

    pub fn width(self) -> usize {
        match self {
            GateId::Cnot => 2,
            GateId::Not => 1,
            _ => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            GateId::Cl => "cl",
            GateId::Toffoli => "toffoli",
            GateId::X => "x",
            GateId::I => "i",
            GateId::Cnot => "cnot",
            GateId::Not => "not",
            GateId::Identity3 => "identity3",
        }
    }

    /// Control predicate on `(x1, x2)` for the three-line gates.
    fn control(self) -> Option<fn(bool, bool) -> bool> {
        match self {
            GateId::Cl => Some(|a, b| a || b),
            GateId::Toffoli => Some(|a, b| a && b),
            GateId::X => Some(|a, b| a != b),
            GateId::I => Some(|a, b| a && !b),
            GateId::Identity3 => Some(|_, _| false),
            GateId::Cnot | GateId::Not => None,
        }
    }
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GateId {
    type Err = UnknownId;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cl" | "tnor" => Ok(GateId::Cl),
            "toffoli" | "t" | "ccnot" => Ok(GateId::Toffoli),
            "x" => Ok(GateId::X),
            "i" => Ok(GateId::I),
            "cnot" | "fanout" => Ok(GateId::Cnot),
            "not" => Ok(GateId::Not),
            "identity3" | "id3" | "identity" => Ok(GateId::Identity3),
            _ => Err(UnknownId(s.to_string())),
        }
    }
}

pub fn build(id: GateId) -> Gate {
    let width = id.width();
    let table = Word::all(width)
        .expect("library widths are valid")
        .map(|w| match id.control() {
            Some(control) => {
                let flip = control(w.bit(0), w.bit(1));
                Word::new(width, w.index() ^ u32::from(flip)).expect("same width")
            }
            // CNOT: (a, b) -> (a, a xor b); NOT: a -> !a
            None if id == GateId::Cnot => {
                Word::new(width, w.index() ^ u32::from(w.bit(0))).expect("same width")
            }
            None => Word::new(width, w.index() ^ 1).expect("same width"),
        })
        .collect();
    Gate::new(id.as_str(), width, table).expect("library gates are bijective")
}

/// Evaluates the closed-form definition of `id` on `w` without any table.
pub fn formula_output(id: GateId, w: Word) -> Result<Word, GateError> {
    if w.width() != id.width() {
        return Err(GateError::WidthMismatch {
            expected: id.width(),
            found: w.width(),
        });
    }
    let x = w.bits();
    let out = match id {
        GateId::Cl => vec![x[0], x[1], (x[0] | x[1]) ^ x[2]],
        GateId::Toffoli => vec![x[0], x[1], (x[0] & x[1]) ^ x[2]],
        GateId::X => vec![x[0], x[1], (x[0] ^ x[1]) ^ x[2]],
        GateId::I => vec![x[0], x[1], (x[0] & !x[1]) ^ x[2]],
        GateId::Identity3 => x,
        GateId::Cnot => vec![x[0], x[0] ^ x[1]],
        GateId::Not => vec![!x[0]],
    };
    Word::from_bits(&out)
}

/// Output column of the published truth table for each three-line gate, in
/// input order 000, 001, ..., 111.
pub fn golden_table(id: GateId) -> Option<[&'static str; 8]> {
    match id {
        GateId::Cl => Some(["000", "001", "011", "010", "101", "100", "111", "110"]),
        GateId::Toffoli => Some(["000", "001", "010", "011", "100", "101", "111", "110"]),
        GateId::X => Some(["000", "001", "011", "010", "101", "100", "110", "111"]),
        GateId::I => Some(["000", "001", "010", "011", "101", "100", "110", "111"]),
        _ => None,
    }
}
