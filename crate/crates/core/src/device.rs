//! Two probes and a cantilever.
//!
//! Each probe is off (`D`, no voltage) or on (`A`). The cantilever settles at
//! an equilibrium angle fixed by the probe pair alone; the initial angle only
//! matters in that the tip relaxes back to vertical when both probes are off.
//! Angles are dimensionless with the OR/AND decision boundary at 1.
//!
//! Observed angles are Gaussian around the equilibrium, truncated to
//! `[max(0, mean - 6 sigma), mean + 6 sigma]` by resampling, so histogram
//! support is bounded and there is no point mass at 0.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)` feeding
//! `rand_distr::StandardNormal`; a seed and config reproduce a run bit for bit.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use thiserror::Error;

/// Angle separating "small" from "large" deflections.
pub const BOUNDARY: f64 = 1.0;
/// Truncation half-width, in standard deviations.
pub const TRUNCATION_SIGMAS: f64 = 6.0;
pub const DEFAULT_BIN_WIDTH: f64 = 0.02;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DeviceError {
    #[error("invalid device config: {0}")]
    InvalidConfig(String),
    #[error("angle {0} is negative")]
    NegativeAngle(f64),
    #[error("need at least one trial")]
    NoTrials,
    #[error("bin width {0} must be positive and finite")]
    InvalidBinWidth(f64),
    #[error("cannot parse {0:?} as a probe pair (expected 00, 01, 10 or 11)")]
    ParseProbeState(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Probe {
    /// `D`: no voltage.
    Off,
    /// `A`: voltage applied.
    On,
}

impl Probe {
    pub fn bit(self) -> bool {
        self == Probe::On
    }

    fn from_bit(b: bool) -> Probe {
        if b {
            Probe::On
        } else {
            Probe::Off
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ProbeState {
    pub p1: Probe,
    pub p2: Probe,
}

impl ProbeState {
    pub const DD: ProbeState = ProbeState {
        p1: Probe::Off,
        p2: Probe::Off,
    };
    pub const DA: ProbeState = ProbeState {
        p1: Probe::Off,
        p2: Probe::On,
    };
    pub const AD: ProbeState = ProbeState {
        p1: Probe::On,
        p2: Probe::Off,
    };
    pub const AA: ProbeState = ProbeState {
        p1: Probe::On,
        p2: Probe::On,
    };

    /// In Boolean order 00, 01, 10, 11 with `x1 = p1`.
    pub const ALL: [ProbeState; 4] = [Self::DD, Self::DA, Self::AD, Self::AA];

    pub fn from_bits(x1: bool, x2: bool) -> ProbeState {
        ProbeState {
            p1: Probe::from_bit(x1),
            p2: Probe::from_bit(x2),
        }
    }

    pub fn bits(self) -> (bool, bool) {
        (self.p1.bit(), self.p2.bit())
    }

    pub fn letters(self) -> &'static str {
        match (self.p1, self.p2) {
            (Probe::Off, Probe::Off) => "DD",
            (Probe::Off, Probe::On) => "DA",
            (Probe::On, Probe::Off) => "AD",
            (Probe::On, Probe::On) => "AA",
        }
    }

    pub fn symbol(self) -> Symbol {
        encode_symbolic(self)
    }
}

impl fmt::Display for ProbeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.bits();
        write!(f, "{}{}", u8::from(a), u8::from(b))
    }
}

impl FromStr for ProbeState {
    type Err = DeviceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "00" | "DD" => Ok(Self::DD),
            "01" | "DA" => Ok(Self::DA),
            "10" | "AD" => Ok(Self::AD),
            "11" | "AA" => Ok(Self::AA),
            _ => Err(DeviceError::ParseProbeState(s.to_string())),
        }
    }
}

/// Output-pair labels: `*` for 00, `○` for 10, `△` for 01, `□` for 11.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Symbol {
    Star,
    Circle,
    Triangle,
    Square,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symbol::Star => "∗",
            Symbol::Circle => "○",
            Symbol::Triangle => "△",
            Symbol::Square => "□",
        })
    }
}

pub fn encode_symbolic(ps: ProbeState) -> Symbol {
    match ps.bits() {
        (false, false) => Symbol::Star,
        (true, false) => Symbol::Circle,
        (false, true) => Symbol::Triangle,
        (true, true) => Symbol::Square,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviceConfig {
    /// Mean angle for DA.
    pub alpha_hat1: f64,
    /// Mean angle for AD.
    pub alpha_tilde1: f64,
    /// Mean angle for AA.
    pub alpha2: f64,
    pub sigma: f64,
    /// When false, DA and AD both settle at the average of the two means.
    pub distinguishable: bool,
}

impl Default for DeviceConfig {
    fn default() -> Self {
        DeviceConfig {
            alpha_hat1: 0.78,
            alpha_tilde1: 0.93,
            alpha2: 1.12,
            sigma: 0.03,
            distinguishable: false,
        }
    }
}

impl DeviceConfig {
    pub fn new(
        alpha_hat1: f64,
        alpha_tilde1: f64,
        alpha2: f64,
        sigma: f64,
        distinguishable: bool,
    ) -> Result<Self, DeviceError> {
        let cfg = DeviceConfig {
            alpha_hat1,
            alpha_tilde1,
            alpha2,
            sigma,
            distinguishable,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn default_distinguishable() -> Self {
        DeviceConfig {
            distinguishable: true,
            ..Self::default()
        }
    }

    pub fn with_sigma(self, sigma: f64) -> Result<Self, DeviceError> {
        let cfg = DeviceConfig { sigma, ..self };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_distinguishable(self, distinguishable: bool) -> Result<Self, DeviceError> {
        let cfg = DeviceConfig {
            distinguishable,
            ..self
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), DeviceError> {
        let values = [self.alpha_hat1, self.alpha_tilde1, self.alpha2, self.sigma];
        if values.iter().any(|v| !v.is_finite()) {
            return Err(DeviceError::InvalidConfig("non-finite parameter".into()));
        }
        if self.sigma <= 0.0 {
            return Err(DeviceError::InvalidConfig(format!(
                "sigma must be positive, got {}",
                self.sigma
            )));
        }
        let ordered = if self.distinguishable {
            0.0 < self.alpha_hat1
                && self.alpha_hat1 < self.alpha_tilde1
                && self.alpha_tilde1 < BOUNDARY
                && BOUNDARY < self.alpha2
        } else {
            let common = self.common_alpha1();
            self.alpha_hat1 > 0.0
                && self.alpha_tilde1 > 0.0
                && 0.0 < common
                && common < BOUNDARY
                && BOUNDARY < self.alpha2
        };
        if !ordered {
            let chain = if self.distinguishable {
                "0 < alpha_hat1 < alpha_tilde1 < 1 < alpha2"
            } else {
                "0 < alpha1 < 1 < alpha2"
            };
            return Err(DeviceError::InvalidConfig(format!(
                "angles violate {chain}: {self:?}"
            )));
        }
        Ok(())
    }

    /// Shared single-probe angle when DA and AD are not told apart.
    pub fn common_alpha1(&self) -> f64 {
        (self.alpha_hat1 + self.alpha_tilde1) / 2.0
    }

    /// The four equilibrium angles, DD, DA, AD, AA.
    pub fn means(&self) -> [f64; 4] {
        ProbeState::ALL.map(|ps| equilibrium_angle(ps, self))
    }
}

/// Settled tip angle for a probe pair; independent of the initial angle.
pub fn equilibrium_angle(ps: ProbeState, cfg: &DeviceConfig) -> f64 {
    match (ps.p1, ps.p2) {
        (Probe::Off, Probe::Off) => 0.0,
        (Probe::On, Probe::On) => cfg.alpha2,
        _ if !cfg.distinguishable => cfg.common_alpha1(),
        (Probe::Off, Probe::On) => cfg.alpha_hat1,
        (Probe::On, Probe::Off) => cfg.alpha_tilde1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleSample {
    pub probes: ProbeState,
    pub alpha_i: f64,
    pub output_angle: f64,
}

/// One noisy outcome of the device.
pub fn sample_output<R: Rng + ?Sized>(
    ps: ProbeState,
    alpha_i: f64,
    cfg: &DeviceConfig,
    rng: &mut R,
) -> Result<AngleSample, DeviceError> {
    if alpha_i.is_nan() || alpha_i < 0.0 {
        return Err(DeviceError::NegativeAngle(alpha_i));
    }
    let mean = equilibrium_angle(ps, cfg);
    let half = TRUNCATION_SIGMAS * cfg.sigma;
    let output_angle = loop {
        let z: f64 = rng.sample(StandardNormal);
        let x = mean + cfg.sigma * z;
        if x >= 0.0 && (x - mean).abs() <= half {
            break x;
        }
    };
    Ok(AngleSample {
        probes: ps,
        alpha_i,
        output_angle,
    })
}

/// Seeded sample stream for one device.
pub struct Simulator {
    cfg: DeviceConfig,
    rng: ChaCha8Rng,
}

impl Simulator {
    pub fn new(cfg: DeviceConfig, seed: u64) -> Result<Self, DeviceError> {
        cfg.validate()?;
        Ok(Simulator {
            cfg,
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn config(&self) -> &DeviceConfig {
        &self.cfg
    }

    pub fn sample(&mut self, ps: ProbeState, alpha_i: f64) -> Result<AngleSample, DeviceError> {
        sample_output(ps, alpha_i, &self.cfg, &mut self.rng)
    }

    pub fn angles(&mut self, ps: ProbeState, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| {
                self.sample(ps, 0.0)
                    .expect("alpha_i = 0 is valid")
                    .output_angle
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bin {
    pub low: f64,
    pub high: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HistogramSummary {
    pub n: u64,
    pub mean: f64,
    /// Sample standard deviation (n - 1 denominator, 0 for one sample).
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
    pub mode_bin: Bin,
}

/// Fixed-width bins aligned to multiples of `bin_width`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub probes: ProbeState,
    pub bin_width: f64,
    /// Index of the first bin, so its low edge is `first_bin * bin_width`.
    pub first_bin: i64,
    pub counts: Vec<u64>,
    pub summary: HistogramSummary,
}

impl Histogram {
    pub fn from_samples(
        probes: ProbeState,
        samples: &[f64],
        bin_width: f64,
    ) -> Result<Self, DeviceError> {
        if !(bin_width.is_finite() && bin_width > 0.0) {
            return Err(DeviceError::InvalidBinWidth(bin_width));
        }
        if samples.is_empty() {
            return Err(DeviceError::NoTrials);
        }
        let bin_of = |x: f64| (x / bin_width).floor() as i64;
        let lo = samples
            .iter()
            .copied()
            .map(bin_of)
            .min()
            .expect("non-empty");
        let hi = samples
            .iter()
            .copied()
            .map(bin_of)
            .max()
            .expect("non-empty");
        let mut counts = vec![0u64; (hi - lo + 1) as usize];
        for &x in samples {
            counts[(bin_of(x) - lo) as usize] += 1;
        }

        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let stddev = if samples.len() > 1 {
            (samples.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let (mode_idx, &mode_count) = counts
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .expect("non-empty");
        let edge = |k: i64| k as f64 * bin_width;
        let mode_bin = Bin {
            low: edge(lo + mode_idx as i64),
            high: edge(lo + mode_idx as i64 + 1),
            count: mode_count,
        };
        Ok(Histogram {
            probes,
            bin_width,
            first_bin: lo,
            summary: HistogramSummary {
                n: samples.len() as u64,
                mean,
                stddev,
                min: samples.iter().copied().fold(f64::INFINITY, f64::min),
                max: samples.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                mode_bin,
            },
            counts,
        })
    }

    pub fn bins(&self) -> impl Iterator<Item = Bin> + '_ {
        self.counts.iter().enumerate().map(move |(k, &count)| {
            let b = self.first_bin + k as i64;
            Bin {
                low: b as f64 * self.bin_width,
                high: (b + 1) as f64 * self.bin_width,
                count,
            }
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn mode(&self) -> Bin {
        self.summary.mode_bin
    }

    /// `bin_low,bin_high,count` with a header row.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["bin_low", "bin_high", "count"])?;
        for bin in self.bins() {
            w.write_record([
                format!("{:.6}", bin.low),
                format!("{:.6}", bin.high),
                bin.count.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// `n` trials from the vertical position, binned.
pub fn run_histogram(
    ps: ProbeState,
    n: usize,
    cfg: &DeviceConfig,
    seed: u64,
    bin_width: f64,
) -> Result<Histogram, DeviceError> {
    if n == 0 {
        return Err(DeviceError::NoTrials);
    }
    if !(bin_width.is_finite() && bin_width > 0.0) {
        return Err(DeviceError::InvalidBinWidth(bin_width));
    }
    let samples = Simulator::new(*cfg, seed)?.angles(ps, n);
    Histogram::from_samples(ps, &samples, bin_width)
}
