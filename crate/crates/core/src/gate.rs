//! Width-generic reversible gates stored as exhaustive permutation tables.
//!
//! A [`Word`] is a fixed-width tuple of bits. Line 0 is `x1`, the leftmost
//! column of a printed truth table, and is the most significant bit of the
//! word's integer index. A [`Gate`] maps the word with index `i` to
//! `table[i]`, and construction rejects anything that is not a bijection.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Widest gate the workbench will build. Keeps every check exhaustive.
pub const MAX_WIDTH: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("width {0} is outside 1..={MAX_WIDTH}")]
    WidthOutOfRange(usize),
    #[error("width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("table has {found} entries, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("output word {0} appears more than once")]
    NotBijective(Word),
    #[error("index {index} does not fit in {width} bits")]
    IndexOutOfRange { width: usize, index: u32 },
    #[error("line {line} does not exist on a width-{width} word")]
    LineOutOfRange { width: usize, line: usize },
    #[error("cannot parse {0:?} as a bitstring")]
    ParseWord(String),
}

/// Fixed-width bit tuple; the argument and result of a gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    width: u8,
    index: u32,
}

impl Word {
    pub fn new(width: usize, index: u32) -> Result<Self, GateError> {
        check_width(width)?;
        if u64::from(index) >= 1u64 << width {
            return Err(GateError::IndexOutOfRange { width, index });
        }
        Ok(Word {
            width: width as u8,
            index,
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self, GateError> {
        check_width(bits.len())?;
        let index = bits.iter().fold(0u32, |acc, &b| (acc << 1) | u32::from(b));
        Ok(Word {
            width: bits.len() as u8,
            index,
        })
    }

    /// Every word of the given width, in index order.
    pub fn all(width: usize) -> Result<impl Iterator<Item = Word>, GateError> {
        check_width(width)?;
        Ok((0..1u32 << width).map(move |index| Word {
            width: width as u8,
            index,
        }))
    }

    pub fn width(&self) -> usize {
        usize::from(self.width)
    }

    /// Canonical integer encoding, `sum bits[j] * 2^(width-1-j)`.
    pub fn index(&self) -> u32 {
        self.index
    }

    /// Bit on `line` (0 = x1). Panics if the line is out of range.
    pub fn bit(&self, line: usize) -> bool {
        assert!(line < self.width(), "line {line} out of range");
        (self.index >> (self.width() - 1 - line)) & 1 == 1
    }

    pub fn bits(&self) -> Vec<bool> {
        (0..self.width()).map(|j| self.bit(j)).collect()
    }

    pub fn with_bit(&self, line: usize, value: bool) -> Result<Word, GateError> {
        if line >= self.width() {
            return Err(GateError::LineOutOfRange {
                width: self.width(),
                line,
            });
        }
        let mask = 1u32 << (self.width() - 1 - line);
        let index = if value {
            self.index | mask
        } else {
            self.index & !mask
        };
        Ok(Word { index, ..*self })
    }

    /// Hamming weight.
    pub fn weight(&self) -> u32 {
        self.index.count_ones()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(GateError::ParseWord(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if bits.is_empty() {
            return Err(GateError::ParseWord(s.to_string()));
        }
        Word::from_bits(&bits).map_err(|_| GateError::ParseWord(s.to_string()))
    }
}

fn check_width(width: usize) -> Result<(), GateError> {
    if (1..=MAX_WIDTH).contains(&width) {
        Ok(())
    } else {
        Err(GateError::WidthOutOfRange(width))
    }
}

/// Structural predicates computed by exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateFlags {
    pub self_reversible: bool,
    pub conservative: bool,
}

/// A validated width-n bijection on words. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GateJson", into = "GateJson")]
pub struct Gate {
    name: String,
    width: usize,
    table: Vec<Word>,
}

impl Gate {
    /// Builds a gate whose output for the word with index `i` is `outputs[i]`.
    pub fn new(
        name: impl Into<String>,
        width: usize,
        outputs: Vec<Word>,
    ) -> Result<Self, GateError> {
        check_width(width)?;
        let expected = 1usize << width;
        if outputs.len() != expected {
            return Err(GateError::WrongLength {
                expected,
                found: outputs.len(),
            });
        }
        let mut seen = vec![false; expected];
        for w in &outputs {
            if w.width() != width {
                return Err(GateError::WidthMismatch {
                    expected: width,
                    found: w.width(),
                });
            }
            let slot = &mut seen[w.index() as usize];
            if *slot {
                return Err(GateError::NotBijective(*w));
            }
            *slot = true;
        }
        Ok(Gate {
            name: name.into(),
            width,
            table: outputs,
        })
    }

    /// Convenience for table literals such as `["000", "001", ...]`.
    pub fn from_bitstrings<S: AsRef<str>>(
        name: impl Into<String>,
        rows: &[S],
    ) -> Result<Self, GateError> {
        let outputs = rows
            .iter()
            .map(|r| r.as_ref().parse())
            .collect::<Result<Vec<Word>, _>>()?;
        let width = outputs.first().map(Word::width).unwrap_or(0);
        Gate::new(name, width, outputs)
    }

    pub fn identity(width: usize) -> Result<Self, GateError> {
        let table = Word::all(width)?.collect();
        Gate::new(format!("id{width}"), width, table)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn table(&self) -> &[Word] {
        &self.table
    }

    pub fn renamed(&self, name: impl Into<String>) -> Gate {
        Gate {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn apply(&self, w: Word) -> Result<Word, GateError> {
        self.check_same_width(w.width())?;
        Ok(self.table[w.index() as usize])
    }

    /// Serial cascade: the result maps `w` to `then.apply(self.apply(w))`.
    pub fn compose(&self, then: &Gate) -> Result<Gate, GateError> {
        self.check_same_width(then.width)?;
        let table = self
            .table
            .iter()
            .map(|w| then.table[w.index() as usize])
            .collect();
        Ok(Gate {
            name: format!("{};{}", self.name, then.name),
            width: self.width,
            table,
        })
    }

    pub fn inverse(&self) -> Gate {
        let mut table = self.table.clone();
        for (i, out) in self.table.iter().enumerate() {
            table[out.index() as usize] = Word {
                width: self.width as u8,
                index: i as u32,
            };
        }
        Gate {
            name: format!("{}^-1", self.name),
            width: self.width,
            table,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.table
            .iter()
            .enumerate()
            .all(|(i, w)| w.index() as usize == i)
    }

    /// Same mapping, ignoring the label.
    pub fn same_table(&self, other: &Gate) -> bool {
        self.width == other.width && self.table == other.table
    }

    pub fn flags(&self) -> GateFlags {
        let self_reversible = self
            .table
            .iter()
            .enumerate()
            .all(|(i, w)| self.table[w.index() as usize].index() as usize == i);
        let conservative = self
            .table
            .iter()
            .enumerate()
            .all(|(i, w)| w.weight() == (i as u32).count_ones());
        GateFlags {
            self_reversible,
            conservative,
        }
    }

    fn check_same_width(&self, found: usize) -> Result<(), GateError> {
        if found == self.width {
            Ok(())
        } else {
            Err(GateError::WidthMismatch {
                expected: self.width,
                found,
            })
        }
    }
}

/// On-disk form: `{"name": ..., "width": n, "table": ["011", ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GateJson {
    pub name: String,
    pub width: usize,
    pub table: Vec<String>,
}

impl From<Gate> for GateJson {
    fn from(g: Gate) -> Self {
        GateJson {
            name: g.name,
            width: g.width,
            table: g.table.iter().map(Word::to_string).collect(),
        }
    }
}

impl TryFrom<GateJson> for Gate {
    type Error = GateError;

    fn try_from(j: GateJson) -> Result<Self, Self::Error> {
        let outputs = j
            .table
            .iter()
            .map(|s| s.parse())
            .collect::<Result<Vec<Word>, _>>()?;
        Gate::new(j.name, j.width, outputs)
    }
}
