//! Landauer accounting.
//!
//! A deterministic table pushes an input distribution forward; whatever
//! entropy the outputs lose was erased, and erasing a bit costs at least
//! `k_B T ln 2` of dissipated energy. Entropies are kept in bits; nats only
//! appear inside the Joule conversion.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::gate::Word;

/// Boltzmann constant, exact SI value, J/K.
pub const BOLTZMANN: f64 = 1.380649e-23;

const SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnergyError {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("temperature {0} K is not physical")]
    NonphysicalTemperature(f64),
    #[error("bit count {0} must be finite and non-negative")]
    NegativeBits(f64),
}

/// Probability mass over words of one width.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: BTreeMap<Word, f64>,
}

impl Distribution {
    pub fn new(probs: impl IntoIterator<Item = (Word, f64)>) -> Result<Self, EnergyError> {
        let mut map = BTreeMap::new();
        let mut width = None;
        for (w, p) in probs {
            if !p.is_finite() || p < 0.0 {
                return Err(EnergyError::InvalidDistribution(format!(
                    "probability {p} for {w}"
                )));
            }
            if *width.get_or_insert(w.width()) != w.width() {
                return Err(EnergyError::InvalidDistribution(
                    "words of mixed widths".into(),
                ));
            }
            if map.insert(w, p).is_some() {
                return Err(EnergyError::InvalidDistribution(format!(
                    "{w} listed twice"
                )));
            }
        }
        let sum: f64 = map.values().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(EnergyError::InvalidDistribution(format!(
                "probabilities sum to {sum}"
            )));
        }
        Ok(Distribution { probs: map })
    }

    pub fn uniform(width: usize) -> Result<Self, EnergyError> {
        let words: Vec<Word> = Word::all(width)
            .map_err(|e| EnergyError::InvalidDistribution(e.to_string()))?
            .collect();
        let p = 1.0 / words.len() as f64;
        Self::new(words.into_iter().map(|w| (w, p)))
    }

    pub fn point(w: Word) -> Self {
        Distribution {
            probs: BTreeMap::from([(w, 1.0)]),
        }
    }

    /// Normalizes non-negative weights, one per word in index order.
    pub fn from_weights(width: usize, weights: &[f64]) -> Result<Self, EnergyError> {
        let words: Vec<Word> = Word::all(width)
            .map_err(|e| EnergyError::InvalidDistribution(e.to_string()))?
            .collect();
        if weights.len() != words.len() {
            return Err(EnergyError::InvalidDistribution(format!(
                "{} weights for {} words",
                weights.len(),
                words.len()
            )));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(EnergyError::InvalidDistribution("negative weight".into()));
        }
        let total: f64 = weights.iter().sum();
        if total <= 0.0 {
            return Err(EnergyError::InvalidDistribution(
                "all weights are zero".into(),
            ));
        }
        Self::new(words.into_iter().zip(weights.iter().map(|w| w / total)))
    }

    /// Weights drawn uniformly from `(0, 1]` and normalized.
    pub fn random<R: Rng + ?Sized>(width: usize, rng: &mut R) -> Result<Self, EnergyError> {
        let n = 1usize << width.min(16);
        let weights: Vec<f64> = (0..n).map(|_| 1.0 - rng.gen::<f64>()).collect();
        Self::from_weights(width, &weights)
    }

    pub fn prob(&self, w: Word) -> f64 {
        self.probs.get(&w).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        self.probs.iter().map(|(w, p)| (*w, *p))
    }

    pub fn support(&self) -> impl Iterator<Item = Word> + '_ {
        self.iter().filter(|(_, p)| *p > 0.0).map(|(w, _)| w)
    }

    /// Image of the distribution under a deterministic map.
    pub fn push_forward<F: Fn(Word) -> Word>(&self, f: F) -> Distribution {
        let mut out: BTreeMap<Word, f64> = BTreeMap::new();
        for (w, p) in self.iter() {
            *out.entry(f(w)).or_default() += p;
        }
        Distribution { probs: out }
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub fn entropy_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    let h: f64 = probs
        .into_iter()
        .filter(|p| *p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    // -0.0 for point masses reads badly in reports
    h.max(0.0)
}

pub fn shannon_entropy(d: &Distribution) -> f64 {
    entropy_bits(d.iter().map(|(_, p)| p))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport {
    pub input_entropy_bits: f64,
    pub output_entropy_bits: f64,
    pub erased_bits: f64,
    pub temperature_k: f64,
    pub min_energy_joules: f64,
    #[serde(rename = "min_entropy_increase_JperK")]
    pub min_entropy_increase_j_per_k: f64,
}

fn check_temperature(t: f64) -> Result<(), EnergyError> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(EnergyError::NonphysicalTemperature(t))
    }
}

/// Information lost by `table` on inputs drawn from `d`, at temperature `t`.
pub fn info_loss<F: Fn(Word) -> Word>(
    table: F,
    d: &Distribution,
    temperature_k: f64,
) -> Result<EnergyReport, EnergyError> {
    check_temperature(temperature_k)?;
    let input = shannon_entropy(d);
    let output = shannon_entropy(&d.push_forward(table));
    // Rounding can leave a bijection a few ulps away from zero either way.
    let erased = (input - output).max(0.0);
    Ok(EnergyReport {
        input_entropy_bits: input,
        output_entropy_bits: output,
        erased_bits: erased,
        temperature_k,
        min_energy_joules: landauer_energy(erased, temperature_k)?,
        min_entropy_increase_j_per_k: erased * BOLTZMANN * std::f64::consts::LN_2,
    })
}

/// Minimum energy dissipated by erasing `bits` at `temperature_k`.
pub fn landauer_energy(bits: f64, temperature_k: f64) -> Result<f64, EnergyError> {
    check_temperature(temperature_k)?;
    if !bits.is_finite() || bits < 0.0 {
        return Err(EnergyError::NegativeBits(bits));
    }
    Ok(bits * BOLTZMANN * temperature_k * std::f64::consts::LN_2)
}
