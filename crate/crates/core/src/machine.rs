//! The universal logic machine: one device plus a memory of normalization
//! functions. Picking a normalization turns the device's angle transitions into
//! a Boolean table, and each table coincides with a restriction of one of the
//! self-reversible gates.
//!
//! The registry holds eight functions: `u1`, `u2`, `u3`, their complements,
//! `u4` (which needs the two single-probe angles told apart) and the delta form
//! `|u1(alpha_i) - u1(alpha_o)|`. Published summaries sometimes number these
//! `u1..u6`; the ids here are the unambiguous ones.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::derivation::{
    classify, restrict, ser_word, BooleanFunction, ConnectiveName, DerivationError, Fixing,
};
use crate::device::{equilibrium_angle, DeviceConfig, ProbeState, BOUNDARY};
use crate::gate::Word;
use crate::library::{build, GateId};

/// Tolerance for "alpha = 0" on noiseless equilibrium angles.
pub const ZERO_EPS: f64 = 1e-9;
/// In noisy mode an angle counts as zero below this many sigmas.
pub const NOISY_ZERO_SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MachineError {
    #[error("angle {0} is not within tolerance of any configured mean")]
    U4Unclassifiable(f64),
    #[error("u4 needs a config with distinguishable single-probe angles")]
    U4RequiresDistinguishable,
    #[error("{0} maps an (alpha_i, alpha_o) pair, not a single angle")]
    RequiresAnglePair(NormalizationId),
    #[error("angle {0} is negative")]
    NegativeAngle(f64),
    #[error("unknown normalization {0:?} (expected u1, u2, u3, u1bar, u2bar, u3bar, u4 or delta)")]
    UnknownId(String),
    #[error(transparent)]
    Derivation(#[from] DerivationError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum NormalizationId {
    U1,
    U2,
    U3,
    U1Bar,
    U2Bar,
    U3Bar,
    U4,
    DeltaU1,
}

impl NormalizationId {
    pub const ALL: [NormalizationId; 8] = [
        NormalizationId::U1,
        NormalizationId::U1Bar,
        NormalizationId::U2,
        NormalizationId::U2Bar,
        NormalizationId::U3,
        NormalizationId::U3Bar,
        NormalizationId::U4,
        NormalizationId::DeltaU1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NormalizationId::U1 => "u1",
            NormalizationId::U2 => "u2",
            NormalizationId::U3 => "u3",
            NormalizationId::U1Bar => "u1bar",
            NormalizationId::U2Bar => "u2bar",
            NormalizationId::U3Bar => "u3bar",
            NormalizationId::U4 => "u4",
            NormalizationId::DeltaU1 => "delta",
        }
    }

    /// `uk <-> uk_bar` for k = 1, 2, 3.
    pub fn complement(self) -> Option<NormalizationId> {
        use NormalizationId::*;
        match self {
            U1 => Some(U1Bar),
            U2 => Some(U2Bar),
            U3 => Some(U3Bar),
            U1Bar => Some(U1),
            U2Bar => Some(U2),
            U3Bar => Some(U3),
            U4 | DeltaU1 => None,
        }
    }

    /// The gate, fixing and connective this normalization is claimed to realize.
    pub fn conclusion(self) -> (GateId, Fixing, ConnectiveName) {
        use NormalizationId::*;
        let on = |line: usize, v: bool| Fixing::new(3, &[(line, v)]).expect("valid fixing");
        match self {
            U1 => (GateId::Cl, on(2, false), ConnectiveName::Or),
            U1Bar => (GateId::Cl, on(2, true), ConnectiveName::Nor),
            U2 => (GateId::Toffoli, on(2, false), ConnectiveName::And),
            U2Bar => (GateId::Toffoli, on(2, true), ConnectiveName::Nand),
            U3 => (GateId::X, on(2, false), ConnectiveName::Xor),
            U3Bar => (GateId::X, on(2, true), ConnectiveName::Nxor),
            U4 => (GateId::I, on(2, true), ConnectiveName::ImpliesAb),
            DeltaU1 => (GateId::Cl, on(0, false), ConnectiveName::Xor),
        }
    }
}

impl fmt::Display for NormalizationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NormalizationId {
    type Err = MachineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String = s
            .to_ascii_lowercase()
            .chars()
            .filter(|c| *c != '_' && *c != '-')
            .collect();
        NormalizationId::ALL
            .into_iter()
            .find(|id| id.as_str() == key)
            .or(match key.as_str() {
                "deltau1" => Some(NormalizationId::DeltaU1),
                _ => None,
            })
            .ok_or_else(|| MachineError::UnknownId(s.to_string()))
    }
}

/// Initial tip position; its normalized value is the ancilla bit `x3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Ancilla {
    #[default]
    Vertical,
    /// Starts at the smaller single-probe angle.
    Deflected,
}

impl Ancilla {
    pub fn angle(self, cfg: &DeviceConfig) -> f64 {
        match self {
            Ancilla::Vertical => 0.0,
            Ancilla::Deflected => cfg.alpha_hat1,
        }
    }
}

impl FromStr for Ancilla {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "vertical" | "v" | "0" => Ok(Ancilla::Vertical),
            "deflected" | "d" | "1" => Ok(Ancilla::Deflected),
            _ => Err(format!(
                "unknown ancilla {s:?} (expected vertical or deflected)"
            )),
        }
    }
}

fn u1(alpha: f64, zero: f64) -> bool {
    alpha > zero
}

fn u2(alpha: f64) -> bool {
    alpha > BOUNDARY
}

fn u3(alpha: f64, zero: f64) -> bool {
    alpha > zero && alpha <= BOUNDARY
}

fn u4(alpha: f64, cfg: &DeviceConfig) -> Result<bool, MachineError> {
    if !cfg.distinguishable {
        return Err(MachineError::U4RequiresDistinguishable);
    }
    let means = [
        (0.0, true),
        (cfg.alpha_hat1, true),
        (cfg.alpha_tilde1, false),
        (cfg.alpha2, true),
    ];
    let tol = u4_tolerance(cfg);
    let (mean, bit) = means
        .into_iter()
        .min_by(|a, b| (a.0 - alpha).abs().total_cmp(&(b.0 - alpha).abs()))
        .expect("four means");
    if (mean - alpha).abs() <= tol {
        Ok(bit)
    } else {
        Err(MachineError::U4Unclassifiable(alpha))
    }
}

/// Half the smallest gap between the four configured means.
pub fn u4_tolerance(cfg: &DeviceConfig) -> f64 {
    let mut m = [0.0, cfg.alpha_hat1, cfg.alpha_tilde1, cfg.alpha2];
    m.sort_by(f64::total_cmp);
    m.windows(2)
        .map(|w| w[1] - w[0])
        .fold(f64::INFINITY, f64::min)
        / 2.0
}

fn normalize_with_zero(
    id: NormalizationId,
    alpha: f64,
    cfg: &DeviceConfig,
    zero: f64,
) -> Result<bool, MachineError> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(MachineError::NegativeAngle(alpha));
    }
    use NormalizationId::*;
    Ok(match id {
        U1 => u1(alpha, zero),
        U2 => u2(alpha),
        U3 => u3(alpha, zero),
        U1Bar => !u1(alpha, zero),
        U2Bar => !u2(alpha),
        U3Bar => !u3(alpha, zero),
        U4 => u4(alpha, cfg)?,
        DeltaU1 => return Err(MachineError::RequiresAnglePair(id)),
    })
}

/// Normalizes an exact (noiseless) angle.
pub fn normalize(
    id: NormalizationId,
    alpha: f64,
    cfg: &DeviceConfig,
) -> Result<bool, MachineError> {
    normalize_with_zero(id, alpha, cfg, ZERO_EPS)
}

/// Normalizes a sampled angle; "zero" means below `4 sigma`.
pub fn normalize_noisy(
    id: NormalizationId,
    alpha: f64,
    cfg: &DeviceConfig,
) -> Result<bool, MachineError> {
    normalize_with_zero(id, alpha, cfg, NOISY_ZERO_SIGMAS * cfg.sigma)
}

/// `|u1(alpha_i) - u1(alpha_o)|`: did the tip move between vertical and deflected?
pub fn delta_normalize(alpha_i: f64, alpha_o: f64) -> Result<bool, MachineError> {
    for a in [alpha_i, alpha_o] {
        if a.is_nan() || a < 0.0 {
            return Err(MachineError::NegativeAngle(a));
        }
    }
    Ok(u1(alpha_i, ZERO_EPS) != u1(alpha_o, ZERO_EPS))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MachineRow {
    pub probes: ProbeState,
    pub alpha_i: f64,
    pub alpha_o: f64,
    #[serde(serialize_with = "ser_word")]
    pub input: Word,
    #[serde(serialize_with = "ser_word")]
    pub output: Word,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MachineTable {
    pub id: NormalizationId,
    pub ancilla: Ancilla,
    pub rows: Vec<MachineRow>,
    /// The two input lines (0-based) the connective is read over.
    pub inputs: [usize; 2],
    /// `x3'` in Boolean order of the two input lines.
    pub truth: Vec<bool>,
    pub connective: ConnectiveName,
}

fn word3(a: bool, b: bool, c: bool) -> Word {
    Word::from_bits(&[a, b, c]).expect("three bits")
}

/// The noiseless four-row table the device produces under `id`.
///
/// For [`NormalizationId::DeltaU1`] probe 1 stays off and the initial angle
/// becomes the second input, so `ancilla` is ignored.
pub fn machine_table(
    id: NormalizationId,
    ancilla: Ancilla,
    cfg: &DeviceConfig,
) -> Result<MachineTable, MachineError> {
    let (rows, inputs) = if id == NormalizationId::DeltaU1 {
        let deflected = Ancilla::Deflected.angle(cfg);
        let cases = [
            (ProbeState::DD, 0.0),
            (ProbeState::DA, 0.0),
            (ProbeState::DD, deflected),
            (ProbeState::DA, deflected),
        ];
        let rows = cases
            .into_iter()
            .map(|(ps, alpha_i)| {
                let alpha_o = equilibrium_angle(ps, cfg);
                let (x1, x2) = ps.bits();
                let x3 = normalize(NormalizationId::U1, alpha_i, cfg)?;
                Ok(MachineRow {
                    probes: ps,
                    alpha_i,
                    alpha_o,
                    input: word3(x1, x2, x3),
                    output: word3(x1, x2, delta_normalize(alpha_i, alpha_o)?),
                })
            })
            .collect::<Result<Vec<_>, MachineError>>()?;
        (rows, [1, 2])
    } else {
        let alpha_i = ancilla.angle(cfg);
        let x3 = normalize(id, alpha_i, cfg)?;
        let rows = ProbeState::ALL
            .into_iter()
            .map(|ps| {
                let alpha_o = equilibrium_angle(ps, cfg);
                let (x1, x2) = ps.bits();
                Ok(MachineRow {
                    probes: ps,
                    alpha_i,
                    alpha_o,
                    input: word3(x1, x2, x3),
                    output: word3(x1, x2, normalize(id, alpha_o, cfg)?),
                })
            })
            .collect::<Result<Vec<_>, MachineError>>()?;
        (rows, [0, 1])
    };

    let mut truth = vec![false; 4];
    for r in &rows {
        let k = usize::from(r.input.bit(inputs[0])) * 2 + usize::from(r.input.bit(inputs[1]));
        truth[k] = r.output.bit(2);
    }
    let connective = classify(&BooleanFunction::new(truth.clone())?)?.name;
    Ok(MachineTable {
        id,
        ancilla,
        rows,
        inputs,
        truth,
        connective,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub id: NormalizationId,
    pub gate: GateId,
    pub fixing: Fixing,
    pub expected: ConnectiveName,
    pub connective: ConnectiveName,
    pub table: MachineTable,
    /// Every machine row equals the gate restriction row with the same input.
    pub rows_match: bool,
    pub pass: bool,
}

/// Checks `id` against its gate restriction using the default device (the
/// distinguishable variant for `u4`) and a vertical initial tip.
pub fn verify_conclusion(id: NormalizationId) -> Verdict {
    let cfg = if id == NormalizationId::U4 {
        DeviceConfig::default_distinguishable()
    } else {
        DeviceConfig::default()
    };
    verify_conclusion_with(id, &cfg).expect("default configs satisfy every precondition")
}

pub fn verify_conclusion_with(
    id: NormalizationId,
    cfg: &DeviceConfig,
) -> Result<Verdict, MachineError> {
    let (gate_id, fixing, expected) = id.conclusion();
    let table = machine_table(id, Ancilla::Vertical, cfg)?;
    let restricted = restrict(&build(gate_id), &fixing)?;

    let rows_match = table.rows.len() == restricted.len()
        && table.rows.iter().all(|mr| {
            restricted
                .iter()
                .any(|rr| rr.input == mr.input && rr.output == mr.output)
        })
        && restricted
            .iter()
            .all(|rr| table.rows.iter().any(|mr| mr.input == rr.input));
    let pass = rows_match && table.connective == expected;
    Ok(Verdict {
        id,
        gate: gate_id,
        fixing,
        expected,
        connective: table.connective,
        table,
        rows_match,
        pass,
    })
}

/// Every conclusion in registry order.
pub fn all_conclusions() -> Vec<Verdict> {
    NormalizationId::ALL
        .into_iter()
        .map(verify_conclusion)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoherenceRow {
    pub probes: ProbeState,
    pub alpha_o: f64,
    pub u1_out: bool,
    pub delta: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Coherence {
    pub rows: Vec<CoherenceRow>,
    pub pass: bool,
}

/// With the tip starting vertical, `u1(alpha_o)` and the delta form must agree
/// on every probe input.
pub fn coherence_check() -> Coherence {
    coherence_check_with(&DeviceConfig::default())
}

pub fn coherence_check_with(cfg: &DeviceConfig) -> Coherence {
    let rows: Vec<CoherenceRow> = ProbeState::ALL
        .into_iter()
        .map(|ps| {
            let alpha_o = equilibrium_angle(ps, cfg);
            CoherenceRow {
                probes: ps,
                alpha_o,
                u1_out: normalize(NormalizationId::U1, alpha_o, cfg)
                    .expect("equilibrium angles are non-negative"),
                delta: delta_normalize(0.0, alpha_o).expect("equilibrium angles are non-negative"),
            }
        })
        .collect();
    let pass = rows.iter().all(|r| r.u1_out == r.delta);
    Coherence { rows, pass }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::device::Simulator;
    use NormalizationId::*;

    fn cfg() -> DeviceConfig {
        DeviceConfig::default()
    }

    #[test]
    fn normalization_examples() {
        let c = cfg();
        assert!(!normalize(U1, 0.0, &c).unwrap());
        assert!(normalize(U1, 0.78, &c).unwrap());
        assert!(!normalize(U2, 0.93, &c).unwrap());
        assert!(normalize(U2, 1.12, &c).unwrap());
        assert!(!normalize(U2, 1.0, &c).unwrap());
        assert!(!normalize(U3, 1.12, &c).unwrap());
        assert!(normalize(U3, 0.5, &c).unwrap());
        assert!(!normalize(U3, 0.0, &c).unwrap());
        let d = DeviceConfig::default_distinguishable();
        assert!(!normalize(U4, d.alpha_tilde1, &d).unwrap());
        assert!(normalize(U4, d.alpha_hat1, &d).unwrap());
        assert!(normalize(U4, 0.0, &d).unwrap());
        assert!(normalize(U4, d.alpha2, &d).unwrap());
    }

    #[test]
    fn bars_complement_their_base() {
        let c = cfg();
        for alpha in [0.0, 1e-12, 0.3, 0.855, 1.0, 1.0001, 1.12, 3.0] {
            for id in [U1, U2, U3] {
                let bar = id.complement().unwrap();
                assert_ne!(
                    normalize(id, alpha, &c).unwrap(),
                    normalize(bar, alpha, &c).unwrap()
                );
            }
        }
    }

    #[test]
    fn normalization_errors() {
        let c = cfg();
        assert_eq!(
            normalize(U4, 0.9, &c),
            Err(MachineError::U4RequiresDistinguishable)
        );
        let d = DeviceConfig::default_distinguishable();
        assert!(matches!(
            normalize(U4, 0.5, &d),
            Err(MachineError::U4Unclassifiable(_))
        ));
        assert_eq!(
            normalize(DeltaU1, 0.5, &c),
            Err(MachineError::RequiresAnglePair(DeltaU1))
        );
        assert!(matches!(
            normalize(U1, -0.1, &c),
            Err(MachineError::NegativeAngle(_))
        ));
        assert!(matches!(
            machine_table(U4, Ancilla::Vertical, &c),
            Err(MachineError::U4RequiresDistinguishable)
        ));
    }

    #[test]
    fn delta_examples() {
        let c = cfg();
        assert!(!delta_normalize(0.0, 0.0).unwrap());
        assert!(delta_normalize(c.alpha_hat1, 0.0).unwrap());
        assert!(!delta_normalize(c.alpha_hat1, c.alpha2).unwrap());
        assert!(delta_normalize(0.0, c.alpha2).unwrap());
    }

    #[test]
    fn machine_connectives() {
        let c = cfg();
        let name = |id| machine_table(id, Ancilla::Vertical, &c).unwrap().connective;
        assert_eq!(name(U1), ConnectiveName::Or);
        assert_eq!(name(U2), ConnectiveName::And);
        assert_eq!(name(U3Bar), ConnectiveName::Nxor);
        let d = DeviceConfig::default_distinguishable();
        assert_eq!(
            machine_table(U4, Ancilla::Vertical, &d).unwrap().connective,
            ConnectiveName::ImpliesAb
        );
    }

    #[test]
    fn delta_table_rows() {
        let t = machine_table(DeltaU1, Ancilla::Vertical, &cfg()).unwrap();
        let pairs: Vec<(String, String)> = t
            .rows
            .iter()
            .map(|r| (r.input.to_string(), r.output.to_string()))
            .collect();
        let expected = [
            ("000", "000"),
            ("010", "011"),
            ("001", "001"),
            ("011", "010"),
        ];
        for (got, want) in pairs.iter().zip(expected) {
            assert_eq!((got.0.as_str(), got.1.as_str()), want);
        }
        assert_eq!(t.connective, ConnectiveName::Xor);
        assert_eq!(t.inputs, [1, 2]);
    }

    #[test]
    fn every_conclusion_passes() {
        for v in all_conclusions() {
            assert!(v.pass, "{}: {:?}", v.id, v);
        }
        let v = verify_conclusion(U2Bar);
        assert_eq!(v.gate, GateId::Toffoli);
        assert_eq!(v.fixing.to_string(), "{x3=1}");
        assert_eq!(v.connective, ConnectiveName::Nand);
    }

    #[test]
    fn coherence() {
        let c = coherence_check();
        assert!(c.pass);
        assert!(!c.rows[0].u1_out && !c.rows[0].delta);
        assert!(c.rows[3].u1_out && c.rows[3].delta);
    }

    #[test]
    fn complement_duality() {
        for id in [U1, U2, U3] {
            let base = machine_table(id, Ancilla::Vertical, &cfg()).unwrap();
            let bar = machine_table(id.complement().unwrap(), Ancilla::Vertical, &cfg()).unwrap();
            let negated: Vec<bool> = base.truth.iter().map(|b| !b).collect();
            assert_eq!(bar.truth, negated);
            assert_eq!(Some(bar.connective), base.connective.complement());
        }
    }

    #[test]
    fn lines_pass_through_and_ancilla_is_constant() {
        let d = DeviceConfig::default_distinguishable();
        for id in NormalizationId::ALL {
            for anc in [Ancilla::Vertical, Ancilla::Deflected] {
                let t = machine_table(id, anc, &d).unwrap();
                let mut outs: Vec<u32> = t.rows.iter().map(|r| r.output.index()).collect();
                outs.sort();
                outs.dedup();
                assert_eq!(outs.len(), 4, "{id} {anc:?}");
                for r in &t.rows {
                    assert_eq!(r.input.bit(0), r.output.bit(0));
                    assert_eq!(r.input.bit(1), r.output.bit(1));
                }
                if id != DeltaU1 {
                    assert!(t
                        .rows
                        .iter()
                        .all(|r| r.input.bit(2) == t.rows[0].input.bit(2)));
                }
            }
        }
    }

    #[test]
    fn deflected_ancilla_flips_u1_fixing() {
        let t = machine_table(U1, Ancilla::Deflected, &cfg()).unwrap();
        assert!(t.rows.iter().all(|r| r.input.bit(2)));
        // ancilla 1 under u1 still reads u1(alpha_o), so x3' is OR again
        assert_eq!(t.connective, ConnectiveName::Or);
    }

    #[test]
    fn ids_parse() {
        for id in NormalizationId::ALL {
            assert_eq!(id.as_str().parse::<NormalizationId>().unwrap(), id);
        }
        assert_eq!("U1_BAR".parse::<NormalizationId>().unwrap(), U1Bar);
        assert_eq!("DELTA_U1".parse::<NormalizationId>().unwrap(), DeltaU1);
        assert!("u5".parse::<NormalizationId>().is_err());
    }

    #[test]
    fn noisy_u1_reproduces_or() {
        let c = cfg();
        let mut sim = Simulator::new(c, 2024).unwrap();
        for ps in ProbeState::ALL {
            let expected = normalize(U1, equilibrium_angle(ps, &c), &c).unwrap();
            let hits = sim
                .angles(ps, 10_000)
                .into_iter()
                .filter(|&a| normalize_noisy(U1, a, &c).unwrap() == expected)
                .count();
            assert!(hits as f64 >= 0.999 * 10_000.0, "{ps}: {hits}");
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn bars_negate_everywhere(alpha in 0.0f64..3.0, k in 0usize..3) {
                let c = DeviceConfig::default();
                let id = [U1, U2, U3][k];
                let bar = id.complement().unwrap();
                prop_assert_ne!(normalize(id, alpha, &c).unwrap(), normalize(bar, alpha, &c).unwrap());
                prop_assert_ne!(
                    normalize_noisy(id, alpha, &c).unwrap(),
                    normalize_noisy(bar, alpha, &c).unwrap()
                );
            }

            #[test]
            fn delta_is_symmetric(a in 0.0f64..2.0, b in 0.0f64..2.0) {
                prop_assert_eq!(delta_normalize(a, b).unwrap(), delta_normalize(b, a).unwrap());
            }

            #[test]
            fn tables_stay_reversible_under_any_valid_means(
                hat in 0.1f64..0.6,
                gap in 0.05f64..0.3,
                over in 0.05f64..0.5,
            ) {
                let tilde = hat + gap;
                let cfg = DeviceConfig::new(hat, tilde, 1.0 + over, 0.01, true).unwrap();
                for id in NormalizationId::ALL {
                    let t = machine_table(id, Ancilla::Vertical, &cfg).unwrap();
                    let mut outs: Vec<u32> = t.rows.iter().map(|r| r.output.index()).collect();
                    outs.sort();
                    outs.dedup();
                    prop_assert_eq!(outs.len(), 4);
                }
            }
        }
    }
}
