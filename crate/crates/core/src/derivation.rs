//! Ancilla-in, garbage-out derivation.
//!
//! Fix some input lines of a reversible gate to constants (the ancillae), keep
//! every output line (the unused ones are garbage), read one output line as a
//! Boolean function of the free inputs and name it.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gate::{Gate, GateError, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerivationError {
    #[error("invalid fixing: {0}")]
    InvalidFixing(String),
    #[error("function has {} essential inputs; no connective name (truth {})", essential.len(), bitstring(truth))]
    UnclassifiedArity {
        essential: Vec<usize>,
        truth: Vec<bool>,
    },
    #[error("truth vector length {0} is not a power of two")]
    BadTruthLength(usize),
    #[error("derived_connectives needs a 3-line gate, got width {0}")]
    UnsupportedWidth(usize),
    #[error(transparent)]
    Gate(#[from] GateError),
}

fn bitstring(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Ancilla assignment: some input lines held constant, the rest free.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fixing {
    width: usize,
    // sorted by line
    assignments: Vec<(usize, bool)>,
}

impl Fixing {
    pub fn new(width: usize, assignments: &[(usize, bool)]) -> Result<Self, DerivationError> {
        let mut sorted = assignments.to_vec();
        sorted.sort_by_key(|&(line, _)| line);
        for pair in sorted.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(DerivationError::InvalidFixing(format!(
                    "line x{} assigned twice",
                    pair[0].0 + 1
                )));
            }
        }
        if let Some(&(line, _)) = sorted.iter().find(|&&(line, _)| line >= width) {
            return Err(DerivationError::InvalidFixing(format!(
                "line x{} does not exist on a width-{width} gate",
                line + 1
            )));
        }
        if sorted.len() >= width {
            return Err(DerivationError::InvalidFixing(
                "at least one input line must stay free".into(),
            ));
        }
        Ok(Fixing {
            width,
            assignments: sorted,
        })
    }

    pub fn none(width: usize) -> Self {
        Fixing {
            width,
            assignments: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn assignments(&self) -> &[(usize, bool)] {
        &self.assignments
    }

    pub fn value(&self, line: usize) -> Option<bool> {
        self.assignments
            .iter()
            .find(|&&(l, _)| l == line)
            .map(|&(_, v)| v)
    }

    pub fn free(&self) -> Vec<usize> {
        (0..self.width)
            .filter(|&l| self.value(l).is_none())
            .collect()
    }

    /// Full gate input for an assignment of the free lines.
    pub fn embed(&self, free: Word) -> Result<Word, DerivationError> {
        let lines = self.free();
        if free.width() != lines.len() {
            return Err(GateError::WidthMismatch {
                expected: lines.len(),
                found: free.width(),
            }
            .into());
        }
        let mut bits = vec![false; self.width];
        for &(line, v) in &self.assignments {
            bits[line] = v;
        }
        for (pos, &line) in lines.iter().enumerate() {
            bits[line] = free.bit(pos);
        }
        Ok(Word::from_bits(&bits)?)
    }

    fn sort_key(&self) -> (Vec<usize>, Vec<bool>) {
        self.assignments.iter().copied().unzip()
    }

    /// Every fixing of `0..=max_fixed` lines, ordered by (line set, values).
    pub fn enumerate(width: usize, max_fixed: usize) -> Vec<Fixing> {
        let mut out = Vec::new();
        for mask in 0u32..1 << width {
            let lines: Vec<usize> = (0..width).filter(|&l| mask >> l & 1 == 1).collect();
            if lines.len() > max_fixed || lines.len() >= width {
                continue;
            }
            for values in 0u32..1 << lines.len() {
                let assignments: Vec<(usize, bool)> = lines
                    .iter()
                    .enumerate()
                    .map(|(k, &l)| (l, values >> (lines.len() - 1 - k) & 1 == 1))
                    .collect();
                out.push(Fixing { width, assignments });
            }
        }
        out.sort();
        out
    }
}

impl Ord for Fixing {
    fn cmp(&self, other: &Self) -> Ordering {
        self.width
            .cmp(&other.width)
            .then_with(|| self.sort_key().cmp(&other.sort_key()))
    }
}

impl PartialOrd for Fixing {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fixing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, &(line, v)) in self.assignments.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "x{}={}", line + 1, u8::from(v))?;
        }
        f.write_str("}")
    }
}

impl Serialize for Fixing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(
            self.assignments
                .iter()
                .map(|&(line, v)| (format!("x{}", line + 1), u8::from(v))),
        )
    }
}

/// One row of a restricted table. Garbage lines are kept in `output`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RestrictedRow {
    #[serde(serialize_with = "ser_word")]
    pub free_input: Word,
    #[serde(serialize_with = "ser_word")]
    pub input: Word,
    #[serde(serialize_with = "ser_word")]
    pub output: Word,
}

pub(crate) fn ser_word<S: Serializer>(w: &Word, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(w)
}

pub fn restrict(g: &Gate, f: &Fixing) -> Result<Vec<RestrictedRow>, DerivationError> {
    if f.width() != g.width() {
        return Err(DerivationError::InvalidFixing(format!(
            "fixing is for width {}, gate has width {}",
            f.width(),
            g.width()
        )));
    }
    let free = f.free().len();
    Word::all(free)?
        .map(|fw| {
            let input = f.embed(fw)?;
            Ok(RestrictedRow {
                free_input: fw,
                input,
                output: g.apply(input)?,
            })
        })
        .collect()
}

/// Total map from `arity` bits to one bit, with the inputs it depends on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanFunction {
    truth: Vec<bool>,
    essential: Vec<usize>,
}

impl BooleanFunction {
    /// `truth[i]` is the value on the input word with index `i`.
    pub fn new(truth: Vec<bool>) -> Result<Self, DerivationError> {
        if !truth.len().is_power_of_two() {
            return Err(DerivationError::BadTruthLength(truth.len()));
        }
        let arity = truth.len().trailing_zeros() as usize;
        let essential = (0..arity)
            .filter(|&p| {
                let mask = 1usize << (arity - 1 - p);
                (0..truth.len()).any(|i| truth[i] != truth[i ^ mask])
            })
            .collect();
        Ok(BooleanFunction { truth, essential })
    }

    pub fn arity(&self) -> usize {
        self.truth.len().trailing_zeros() as usize
    }

    pub fn truth(&self) -> &[bool] {
        &self.truth
    }

    pub fn essential(&self) -> &[usize] {
        &self.essential
    }

    pub fn eval(&self, index: usize) -> bool {
        self.truth[index]
    }

    /// Same function over only the listed positions; the others are read at 0.
    /// Faithful only when every dropped position is non-essential.
    pub fn project(&self, keep: &[usize]) -> BooleanFunction {
        let arity = self.arity();
        let truth = (0..1usize << keep.len())
            .map(|j| {
                let full = keep.iter().enumerate().fold(0usize, |acc, (k, &p)| {
                    let bit = j >> (keep.len() - 1 - k) & 1;
                    acc | bit << (arity - 1 - p)
                });
                self.truth[full]
            })
            .collect();
        BooleanFunction::new(truth).expect("power of two")
    }
}

/// Names for every function of at most two essential inputs, plus the
/// FanOut wiring primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConnectiveName {
    Const0,
    Const1,
    IdA,
    IdB,
    NotA,
    NotB,
    And,
    Or,
    Nand,
    Nor,
    Xor,
    Nxor,
    ImpliesAb,
    ImpliesBa,
    NimpliesAb,
    NimpliesBa,
    Id,
    Not,
    #[serde(rename = "CONST0_1")]
    Const0Unary,
    #[serde(rename = "CONST1_1")]
    Const1Unary,
    #[serde(rename = "FANOUT")]
    FanOut,
}

impl ConnectiveName {
    /// Binary names indexed by the truth vector `[f(00), f(01), f(10), f(11)]`
    /// read as a 4-bit number, f(00) most significant.
    const BINARY: [ConnectiveName; 16] = [
        ConnectiveName::Const0,     // 0000
        ConnectiveName::And,        // 0001
        ConnectiveName::NimpliesAb, // 0010
        ConnectiveName::IdA,        // 0011
        ConnectiveName::NimpliesBa, // 0100
        ConnectiveName::IdB,        // 0101
        ConnectiveName::Xor,        // 0110
        ConnectiveName::Or,         // 0111
        ConnectiveName::Nor,        // 1000
        ConnectiveName::Nxor,       // 1001
        ConnectiveName::NotB,       // 1010
        ConnectiveName::ImpliesBa,  // 1011
        ConnectiveName::NotA,       // 1100
        ConnectiveName::ImpliesAb,  // 1101
        ConnectiveName::Nand,       // 1110
        ConnectiveName::Const1,     // 1111
    ];

    const UNARY: [ConnectiveName; 4] = [
        ConnectiveName::Const0Unary, // 00
        ConnectiveName::Id,          // 01
        ConnectiveName::Not,         // 10
        ConnectiveName::Const1Unary, // 11
    ];

    /// Bijective lookup at arity 1 (4 names) and arity 2 (16 names).
    pub fn from_truth(truth: &[bool]) -> Option<ConnectiveName> {
        let code = truth
            .iter()
            .fold(0usize, |acc, &b| acc << 1 | usize::from(b));
        match truth.len() {
            2 => Some(Self::UNARY[code]),
            4 => Some(Self::BINARY[code]),
            _ => None,
        }
    }

    /// Canonical truth vector, `None` for FanOut.
    pub fn truth(self) -> Option<Vec<bool>> {
        let (table, bits): (&[ConnectiveName], usize) = if Self::UNARY.contains(&self) {
            (&Self::UNARY, 2)
        } else {
            (&Self::BINARY, 4)
        };
        let code = table.iter().position(|&n| n == self)?;
        Some((0..bits).map(|k| code >> (bits - 1 - k) & 1 == 1).collect())
    }

    /// Pointwise negation of the function; `None` for FanOut.
    pub fn complement(self) -> Option<ConnectiveName> {
        let t: Vec<bool> = self.truth()?.into_iter().map(|b| !b).collect();
        ConnectiveName::from_truth(&t)
    }

    pub fn label(self) -> &'static str {
        match self {
            ConnectiveName::Const0 => "CONST0",
            ConnectiveName::Const1 => "CONST1",
            ConnectiveName::IdA => "ID_A",
            ConnectiveName::IdB => "ID_B",
            ConnectiveName::NotA => "NOT_A",
            ConnectiveName::NotB => "NOT_B",
            ConnectiveName::And => "AND",
            ConnectiveName::Or => "OR",
            ConnectiveName::Nand => "NAND",
            ConnectiveName::Nor => "NOR",
            ConnectiveName::Xor => "XOR",
            ConnectiveName::Nxor => "NXOR",
            ConnectiveName::ImpliesAb => "IMPLIES_AB",
            ConnectiveName::ImpliesBa => "IMPLIES_BA",
            ConnectiveName::NimpliesAb => "NIMPLIES_AB",
            ConnectiveName::NimpliesBa => "NIMPLIES_BA",
            ConnectiveName::Id => "ID",
            ConnectiveName::Not => "NOT",
            ConnectiveName::Const0Unary => "CONST0_1",
            ConnectiveName::Const1Unary => "CONST1_1",
            ConnectiveName::FanOut => "FANOUT",
        }
    }
}

impl fmt::Display for ConnectiveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub name: ConnectiveName,
    /// Positions (within the function's inputs) the name is stated over.
    pub essential: Vec<usize>,
    pub non_essential: Vec<usize>,
}

/// Names `bf` after projecting away its non-essential inputs.
pub fn classify(bf: &BooleanFunction) -> Result<Classification, DerivationError> {
    let essential = bf.essential().to_vec();
    let non_essential = (0..bf.arity()).filter(|p| !essential.contains(p)).collect();
    let name = match essential.len() {
        0 => {
            if bf.eval(0) {
                ConnectiveName::Const1
            } else {
                ConnectiveName::Const0
            }
        }
        1 | 2 => {
            let projected = bf.project(&essential);
            ConnectiveName::from_truth(projected.truth()).expect("arity 1 or 2")
        }
        _ => {
            return Err(DerivationError::UnclassifiedArity {
                essential,
                truth: bf.truth().to_vec(),
            })
        }
    };
    Ok(Classification {
        name,
        essential,
        non_essential,
    })
}

/// Output `line` of `g` as a function of the free inputs of `f`.
pub fn output_function(
    g: &Gate,
    f: &Fixing,
    line: usize,
) -> Result<BooleanFunction, DerivationError> {
    if line >= g.width() {
        return Err(DerivationError::InvalidFixing(format!(
            "output line x{} does not exist on a width-{} gate",
            line + 1,
            g.width()
        )));
    }
    let truth = restrict(g, f)?
        .into_iter()
        .map(|row| row.output.bit(line))
        .collect();
    BooleanFunction::new(truth)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub fixing: Fixing,
    /// Output line, 0-based.
    pub line: usize,
    pub name: ConnectiveName,
    /// Input lines (0-based) the connective reads, in argument order.
    pub inputs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DerivedSet {
    pub entries: Vec<Derivation>,
    pub names: BTreeSet<ConnectiveName>,
}

/// Enumerates every fixing of 0, 1 or 2 lines of a 3-line gate and names each
/// output line that does something other than carry its own input (or its
/// own ancilla) straight through.
pub fn derived_connectives(g: &Gate) -> Result<DerivedSet, DerivationError> {
    if g.width() != 3 {
        return Err(DerivationError::UnsupportedWidth(g.width()));
    }
    let mut entries = Vec::new();
    for fixing in Fixing::enumerate(3, 2) {
        let rows = restrict(g, &fixing)?;
        let free = fixing.free();
        let passes_through =
            |line: usize| rows.iter().all(|r| r.output.bit(line) == r.input.bit(line));
        for line in 0..3 {
            if passes_through(line) {
                continue;
            }
            let bf = BooleanFunction::new(rows.iter().map(|r| r.output.bit(line)).collect())?;
            let Ok(class) = classify(&bf) else {
                continue;
            };
            let inputs: Vec<usize> = class.essential.iter().map(|&p| free[p]).collect();
            let fan_out =
                class.name == ConnectiveName::Id && inputs[0] != line && passes_through(inputs[0]);
            entries.push(Derivation {
                fixing: fixing.clone(),
                line,
                name: if fan_out {
                    ConnectiveName::FanOut
                } else {
                    class.name
                },
                inputs,
            });
        }
    }
    entries.sort_by(|a, b| a.fixing.cmp(&b.fixing).then(a.line.cmp(&b.line)));
    let names = entries.iter().map(|e| e.name).collect();
    Ok(DerivedSet { entries, names })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library::{build, GateId};

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    fn fix(pairs: &[(usize, bool)]) -> Fixing {
        Fixing::new(3, pairs).unwrap()
    }

    #[test]
    fn restrict_cl_x3_zero_is_the_or_table() {
        let rows = restrict(&build(GateId::Cl), &fix(&[(2, false)])).unwrap();
        let got: Vec<(String, String)> = rows
            .iter()
            .map(|r| (r.input.to_string(), r.output.to_string()))
            .collect();
        let want = [
            ("000", "000"),
            ("010", "011"),
            ("100", "101"),
            ("110", "111"),
        ];
        assert_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));
    }

    #[test]
    fn restrict_toffoli_x3_zero_is_the_and_table() {
        let rows = restrict(&build(GateId::Toffoli), &fix(&[(2, false)])).unwrap();
        let out: Vec<String> = rows.iter().map(|r| r.output.to_string()).collect();
        assert_eq!(out, ["000", "010", "100", "111"]);
    }

    #[test]
    fn restrict_identity_two_fixed_lines() {
        let rows = restrict(&build(GateId::Identity3), &fix(&[(0, false), (1, false)])).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(!rows[0].output.bit(2));
        assert!(rows[1].output.bit(2));
    }

    #[test]
    fn invalid_fixings() {
        assert!(matches!(
            Fixing::new(3, &[(3, false)]),
            Err(DerivationError::InvalidFixing(_))
        ));
        assert!(matches!(
            Fixing::new(3, &[(1, false), (1, true)]),
            Err(DerivationError::InvalidFixing(_))
        ));
        assert!(matches!(
            Fixing::new(3, &[(0, false), (1, false), (2, true)]),
            Err(DerivationError::InvalidFixing(_))
        ));
        let cl = build(GateId::Cl);
        assert!(output_function(&cl, &fix(&[(2, false)]), 3).is_err());
        assert!(restrict(&cl, &Fixing::none(2)).is_err());
    }

    #[test]
    fn output_function_examples() {
        let cl = build(GateId::Cl);
        let or = output_function(&cl, &fix(&[(2, false)]), 2).unwrap();
        assert_eq!(or.truth(), bits("0111"));
        assert_eq!(or.essential(), &[0, 1]);
        let nor = output_function(&cl, &fix(&[(2, true)]), 2).unwrap();
        assert_eq!(nor.truth(), bits("1000"));
        assert_eq!(classify(&nor).unwrap().name, ConnectiveName::Nor);

        let t = build(GateId::Toffoli);
        let not = output_function(&t, &fix(&[(1, true), (2, true)]), 2).unwrap();
        assert_eq!(not.truth(), bits("10"));
        assert_eq!(classify(&not).unwrap().name, ConnectiveName::Not);
    }

    #[test]
    fn classify_examples() {
        let or = BooleanFunction::new(bits("0111")).unwrap();
        assert_eq!(classify(&or).unwrap().name, ConnectiveName::Or);
        let imp = BooleanFunction::new(bits("1101")).unwrap();
        assert_eq!(classify(&imp).unwrap().name, ConnectiveName::ImpliesAb);
        let c1 = BooleanFunction::new(bits("11")).unwrap();
        let c = classify(&c1).unwrap();
        assert_eq!(c.name, ConnectiveName::Const1);
        assert_eq!(c.non_essential, vec![0]);
    }

    #[test]
    fn degenerate_function_is_named_after_projection() {
        // CL with x1 = 1: (1, a, b) -> !b, x2 non-essential
        let cl = build(GateId::Cl);
        let bf = output_function(&cl, &fix(&[(0, true)]), 2).unwrap();
        let c = classify(&bf).unwrap();
        assert_eq!(c.name, ConnectiveName::Not);
        assert_eq!(c.essential, vec![1]);
        assert_eq!(c.non_essential, vec![0]);
    }

    #[test]
    fn three_essential_inputs_are_raw() {
        let cl = build(GateId::Cl);
        let bf = output_function(&cl, &Fixing::none(3), 2).unwrap();
        assert!(matches!(
            classify(&bf),
            Err(DerivationError::UnclassifiedArity { ref essential, .. }) if essential.len() == 3
        ));
    }

    #[test]
    fn name_table_is_a_bijection() {
        let mut seen = BTreeSet::new();
        for code in 0..16usize {
            let t: Vec<bool> = (0..4).map(|k| code >> (3 - k) & 1 == 1).collect();
            let n = ConnectiveName::from_truth(&t).unwrap();
            assert_eq!(n.truth().unwrap(), t);
            assert!(seen.insert(n));
        }
        for code in 0..4usize {
            let t: Vec<bool> = (0..2).map(|k| code >> (1 - k) & 1 == 1).collect();
            let n = ConnectiveName::from_truth(&t).unwrap();
            assert_eq!(n.truth().unwrap(), t);
            assert!(seen.insert(n));
        }
        assert_eq!(seen.len(), 20);
        assert_eq!(ConnectiveName::Or.complement(), Some(ConnectiveName::Nor));
        assert_eq!(ConnectiveName::Xor.complement(), Some(ConnectiveName::Nxor));
        assert_eq!(ConnectiveName::FanOut.complement(), None);
    }

    #[test]
    fn essential_set_matches_flip_definition() {
        for code in 0..256usize {
            let t: Vec<bool> = (0..8).map(|k| code >> k & 1 == 1).collect();
            let bf = BooleanFunction::new(t.clone()).unwrap();
            for p in 0..3 {
                let flips = (0..8).any(|i| t[i] != t[i ^ (1 << (2 - p))]);
                assert_eq!(bf.essential().contains(&p), flips);
            }
        }
    }

    #[test]
    fn restricted_rows_are_injective() {
        for id in GateId::THREE_LINE {
            let g = build(id);
            for f in Fixing::enumerate(3, 2) {
                let rows = restrict(&g, &f).unwrap();
                let outs: BTreeSet<Word> = rows.iter().map(|r| r.output).collect();
                assert_eq!(outs.len(), rows.len(), "{id} {f}");
            }
        }
    }

    #[test]
    fn control_lines_are_identity_when_free() {
        for id in GateId::THREE_LINE {
            let g = build(id);
            for f in Fixing::enumerate(3, 2) {
                let free = f.free();
                for line in [0, 1] {
                    let Some(pos) = free.iter().position(|&l| l == line) else {
                        continue;
                    };
                    let bf = output_function(&g, &f, line).unwrap();
                    let k = free.len();
                    for (i, &v) in bf.truth().iter().enumerate() {
                        assert_eq!(v, i >> (k - 1 - pos) & 1 == 1, "{id} {f} x{}", line + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn negating_the_target_ancilla_negates_the_connective() {
        for id in [GateId::Cl, GateId::Toffoli, GateId::X] {
            let g = build(id);
            let zero = output_function(&g, &fix(&[(2, false)]), 2).unwrap();
            let one = output_function(&g, &fix(&[(2, true)]), 2).unwrap();
            let negated: Vec<bool> = zero.truth().iter().map(|b| !b).collect();
            assert_eq!(one.truth(), negated.as_slice(), "{id}");
            let (n0, n1) = (classify(&zero).unwrap().name, classify(&one).unwrap().name);
            assert_eq!(n0.complement(), Some(n1));
        }
    }

    #[test]
    fn derived_sets() {
        use ConnectiveName::*;
        let cl = derived_connectives(&build(GateId::Cl)).unwrap().names;
        assert!(
            [Xor, Or, Nor, Not, FanOut].iter().all(|n| cl.contains(n)),
            "{cl:?}"
        );
        let t = derived_connectives(&build(GateId::Toffoli)).unwrap().names;
        assert!(
            [Xor, And, Nand, Not, FanOut].iter().all(|n| t.contains(n)),
            "{t:?}"
        );
        let x = derived_connectives(&build(GateId::X)).unwrap().names;
        assert!(
            [Xor, Nxor, Not, FanOut].iter().all(|n| x.contains(n)),
            "{x:?}"
        );
        assert!(matches!(
            derived_connectives(&build(GateId::Cnot)),
            Err(DerivationError::UnsupportedWidth(2))
        ));
    }

    #[test]
    fn cl_fanout_realisations() {
        // (a,0,0) -> (a,0,a) and (0,a,0) -> (0,a,a)
        let set = derived_connectives(&build(GateId::Cl)).unwrap();
        let fanouts: Vec<(String, usize, Vec<usize>)> = set
            .entries
            .iter()
            .filter(|e| e.name == ConnectiveName::FanOut)
            .map(|e| (e.fixing.to_string(), e.line, e.inputs.clone()))
            .collect();
        assert!(fanouts.contains(&("{x2=0,x3=0}".into(), 2, vec![0])));
        assert!(fanouts.contains(&("{x1=0,x3=0}".into(), 2, vec![1])));
    }

    #[test]
    fn fixings_enumerate_in_canonical_order() {
        let all = Fixing::enumerate(3, 2);
        assert_eq!(all.len(), 1 + 3 * 2 + 3 * 4);
        let labels: Vec<String> = all.iter().take(5).map(|f| f.to_string()).collect();
        assert_eq!(
            labels,
            ["{}", "{x1=0}", "{x1=1}", "{x1=0,x2=0}", "{x1=0,x2=1}"]
        );
    }
}
