//! Shared parameter types, frequency grids and the spectrum container.
//!
//! All frequencies and rates share one angular-frequency unit chosen by the
//! caller (ħ = 1). Nothing here converts units; only ratios matter.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Complex scattering amplitude (dimensionless).
pub type Amplitude = Complex64;

/// Slack allowed above unity in `|t|² + |r|²`.
pub const FLUX_SLACK: f64 = 1e-12;

/// A violated parameter invariant, naming the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    fn new(field: &'static str, message: impl Into<String>) -> Self {
        Self {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.field, self.message)
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::InvalidParameter {
            field: v.field,
            reason: v.message,
        }
    }
}

/// Report-style validation: `Ok(())` iff every invariant holds, otherwise the
/// first violation found.
pub trait Validate {
    fn validate(&self) -> std::result::Result<(), Violation>;
}

fn check_rate(value: f64, field: &'static str) -> std::result::Result<(), Violation> {
    if !value.is_finite() {
        Err(Violation::new(field, "not finite"))
    } else if value < 0.0 {
        Err(Violation::new(field, "negative"))
    } else {
        Ok(())
    }
}

fn check_frequency(value: f64, field: &'static str) -> std::result::Result<(), Violation> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Violation::new(field, "not finite"))
    }
}

/// Two-level emitter side-coupled to a continuous waveguide.
///
/// `omega_e` is measured in the frame shifted by the linearization frequency,
/// so detunings are simply `omega - omega_e`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmitterWaveguideParams {
    /// Decay rate into the right-moving guided mode.
    pub gamma_right: f64,
    /// Decay rate into the left-moving guided mode.
    pub gamma_left: f64,
    /// Decay rate into non-guided channels.
    #[serde(default)]
    pub gamma_loss: f64,
    #[serde(default)]
    pub omega_e: f64,
}

impl EmitterWaveguideParams {
    /// Symmetric coupling `Γ_R = Γ_L = gamma`, lossless, emitter at zero.
    pub fn symmetric(gamma: f64) -> Self {
        Self {
            gamma_right: gamma,
            gamma_left: gamma,
            gamma_loss: 0.0,
            omega_e: 0.0,
        }
    }

    /// Chiral coupling: the emitter only decays into the left-moving mode.
    pub fn chiral_left(gamma: f64) -> Self {
        Self {
            gamma_right: 0.0,
            gamma_left: gamma,
            gamma_loss: 0.0,
            omega_e: 0.0,
        }
    }

    pub fn with_loss(mut self, gamma_loss: f64) -> Self {
        self.gamma_loss = gamma_loss;
        self
    }

    pub fn with_omega_e(mut self, omega_e: f64) -> Self {
        self.omega_e = omega_e;
        self
    }

    /// Total guided decay rate `Γ_R + Γ_L`.
    pub fn guided_rate(&self) -> f64 {
        self.gamma_right + self.gamma_left
    }

    /// No guided coupling at all: the photon propagates freely.
    pub fn is_trivially_transmitting(&self) -> bool {
        self.guided_rate() == 0.0
    }
}

impl Validate for EmitterWaveguideParams {
    fn validate(&self) -> std::result::Result<(), Violation> {
        check_rate(self.gamma_right, "gamma_right")?;
        check_rate(self.gamma_left, "gamma_left")?;
        check_rate(self.gamma_loss, "gamma_loss")?;
        check_frequency(self.omega_e, "omega_e")
    }
}

/// Two-level emitter inside a single-mode cavity that is side-coupled to a
/// waveguide (Jaynes-Cummings system).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityParams {
    /// Emitter-cavity coupling rate.
    pub g: f64,
    /// Intrinsic cavity loss rate.
    #[serde(default)]
    pub kappa: f64,
    /// Emitter loss rate.
    #[serde(default)]
    pub gamma_loss: f64,
    #[serde(default)]
    pub omega_c: f64,
    #[serde(default)]
    pub omega_e: f64,
    /// Cavity decay rate into the right-moving guided mode.
    pub gamma_right: f64,
    /// Cavity decay rate into the left-moving guided mode.
    pub gamma_left: f64,
}

impl CavityParams {
    /// Lossless, resonant (`ω_e = ω_c`), symmetric cavity-waveguide coupling.
    pub fn resonant(omega_c: f64, g: f64, gamma: f64) -> Self {
        Self {
            g,
            kappa: 0.0,
            gamma_loss: 0.0,
            omega_c,
            omega_e: omega_c,
            gamma_right: gamma,
            gamma_left: gamma,
        }
    }

    /// Symmetric cavity-waveguide rates derived from the loaded quality
    /// factor, `Γ_R = Γ_L = ω_c / 2Q`.
    pub fn from_quality_factor(omega_c: f64, q: f64, g: f64, omega_e: f64) -> Result<Self> {
        let gamma = crate::cavity::gamma_from_q(omega_c, q)?;
        Ok(Self {
            g,
            kappa: 0.0,
            gamma_loss: 0.0,
            omega_c,
            omega_e,
            gamma_right: gamma,
            gamma_left: gamma,
        })
    }

    pub fn with_g(mut self, g: f64) -> Self {
        self.g = g;
        self
    }

    pub fn with_losses(mut self, kappa: f64, gamma_loss: f64) -> Self {
        self.kappa = kappa;
        self.gamma_loss = gamma_loss;
        self
    }

    /// Strong coupling label, `g > max(κ, γ)`. Diagnostic only.
    pub fn is_strong_coupling(&self) -> bool {
        self.g > self.kappa.max(self.gamma_loss)
    }
}

impl Validate for CavityParams {
    fn validate(&self) -> std::result::Result<(), Violation> {
        check_rate(self.g, "g")?;
        check_rate(self.kappa, "kappa")?;
        check_rate(self.gamma_loss, "gamma_loss")?;
        check_frequency(self.omega_c, "omega_c")?;
        check_frequency(self.omega_e, "omega_e")?;
        check_rate(self.gamma_right, "gamma_right")?;
        check_rate(self.gamma_left, "gamma_left")
    }
}

/// Emitter coupled to one site of a coupled-resonator waveguide (lattice
/// constant 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrwParams {
    #[serde(default)]
    pub omega_c: f64,
    /// Nearest-neighbour hopping rate.
    pub xi: f64,
    /// Emitter-resonator coupling rate.
    pub g: f64,
    #[serde(default)]
    pub omega_e: f64,
    /// Emitter loss rate. Experimental: applied as `ω_e → ω_e − iγ/2`.
    #[serde(default)]
    pub gamma_loss: f64,
}

impl CrwParams {
    /// Emitter resonant with the cavities, lossless.
    pub fn resonant(omega_c: f64, xi: f64, g: f64) -> Self {
        Self {
            omega_c,
            xi,
            g,
            omega_e: omega_c,
            gamma_loss: 0.0,
        }
    }

    /// Lower and upper band edges `ω_c ∓ 2ξ`.
    pub fn band(&self) -> (f64, f64) {
        (self.omega_c - 2.0 * self.xi, self.omega_c + 2.0 * self.xi)
    }

    /// Effective continuum decay rate at band centre, `g² / 2ξ`.
    pub fn band_center_rate(&self) -> f64 {
        self.g * self.g / (2.0 * self.xi)
    }
}

impl Validate for CrwParams {
    fn validate(&self) -> std::result::Result<(), Violation> {
        check_frequency(self.omega_c, "omega_c")?;
        if !self.xi.is_finite() {
            return Err(Violation::new("xi", "not finite"));
        }
        if self.xi <= 0.0 {
            return Err(Violation::new("xi", "must be positive"));
        }
        check_rate(self.g, "g")?;
        check_frequency(self.omega_e, "omega_e")?;
        check_rate(self.gamma_loss, "gamma_loss")
    }
}

/// Which reference frequency a grid's abscissa is measured from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Frame {
    Absolute,
    DetuningFromEmitter,
    DetuningFromCavity,
}

impl Frame {
    pub fn as_str(&self) -> &'static str {
        match self {
            Frame::Absolute => "absolute",
            Frame::DetuningFromEmitter => "detuning-from-emitter",
            Frame::DetuningFromCavity => "detuning-from-cavity",
        }
    }
}

impl fmt::Display for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Strictly increasing list of sample frequencies tagged with its frame.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    frame: Frame,
    uniform: bool,
}

impl FrequencyGrid {
    /// `n` evenly spaced points on `[center − half_width, center + half_width]`.
    pub fn uniform(center: f64, half_width: f64, n: usize, frame: Frame) -> Result<Self> {
        ensure_finite(center, "center")?;
        ensure_finite(half_width, "half_width")?;
        if n < 2 {
            return Err(Error::GridTooSmall(n));
        }
        if half_width <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "half_width",
                reason: "must be positive".into(),
            });
        }
        let lo = center - half_width;
        let step = 2.0 * half_width / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| lo + step * i as f64).collect();
        // pin both endpoints and the midpoint against accumulated rounding
        points[n - 1] = center + half_width;
        if n % 2 == 1 {
            points[n / 2] = center;
        }
        Ok(Self {
            points,
            frame,
            uniform: true,
        })
    }

    /// Arbitrary strictly increasing samples.
    pub fn from_points(points: Vec<f64>, frame: Frame) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::GridTooSmall(points.len()));
        }
        for &p in &points {
            ensure_finite(p, "grid point")?;
        }
        if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::GridNotIncreasing(i + 1));
        }
        let uniform = detect_uniform(&points);
        Ok(Self {
            points,
            frame,
            uniform,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Spacing of a uniform grid.
    pub fn spacing(&self) -> Option<f64> {
        self.uniform
            .then(|| (self.last() - self.first()) / (self.len() - 1) as f64)
    }

    /// Same samples shifted by `-origin` and re-tagged with `frame`.
    pub fn recentered(&self, origin: f64, frame: Frame) -> Self {
        Self {
            points: self.points.iter().map(|p| p - origin).collect(),
            frame,
            uniform: self.uniform,
        }
    }

    /// Uniform grid over the same interval with `factor` times as many
    /// intervals. Keeps the frame.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        let factor = factor.max(1);
        let n = (self.len() - 1) * factor + 1;
        let center = 0.5 * (self.first() + self.last());
        let half = 0.5 * (self.last() - self.first());
        Self::uniform(center, half, n, self.frame)
    }
}

fn detect_uniform(points: &[f64]) -> bool {
    let n = points.len();
    let step = (points[n - 1] - points[0]) / (n - 1) as f64;
    let scale = (points[n - 1] - points[0]).abs().max(f64::MIN_POSITIVE);
    points
        .iter()
        .enumerate()
        .all(|(i, &p)| (p - (points[0] + step * i as f64)).abs() <= 1e-9 * scale)
}

/// Transmission, reflection and loss probabilities at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probabilities {
    pub transmission: f64,
    pub reflection: f64,
    pub loss: f64,
}

impl Probabilities {
    pub fn from_amplitudes(t: Amplitude, r: Amplitude) -> Self {
        let transmission = t.norm_sqr();
        let reflection = r.norm_sqr();
        Self {
            transmission,
            reflection,
            loss: 1.0 - transmission - reflection,
        }
    }
}

/// Complex `t(ω)`, `r(ω)` sampled on a frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralResponse {
    grid: FrequencyGrid,
    t: Vec<Amplitude>,
    r: Vec<Amplitude>,
}

impl SpectralResponse {
    pub fn new(grid: FrequencyGrid, t: Vec<Amplitude>, r: Vec<Amplitude>) -> Result<Self> {
        if t.len() != grid.len() || r.len() != grid.len() {
            return Err(Error::InvalidParameter {
                field: "amplitudes",
                reason: format!(
                    "expected {} samples, got t={} r={}",
                    grid.len(),
                    t.len(),
                    r.len()
                ),
            });
        }
        for (i, (ti, ri)) in t.iter().zip(&r).enumerate() {
            if !(ti.re.is_finite() && ti.im.is_finite() && ri.re.is_finite() && ri.im.is_finite()) {
                return Err(Error::NonFinite("amplitude"));
            }
            let flux = ti.norm_sqr() + ri.norm_sqr();
            if flux > 1.0 + FLUX_SLACK {
                return Err(Error::InvalidParameter {
                    field: "amplitudes",
                    reason: format!("|t|^2 + |r|^2 = {flux} exceeds 1 at index {i}"),
                });
            }
        }
        Ok(Self { grid, t, r })
    }

    /// Evaluate `amplitudes` at every grid point, in order.
    pub fn from_fn<F>(grid: FrequencyGrid, mut amplitudes: F) -> Result<Self>
    where
        F: FnMut(f64) -> Result<(Amplitude, Amplitude)>,
    {
        let mut t = Vec::with_capacity(grid.len());
        let mut r = Vec::with_capacity(grid.len());
        for &w in grid.points() {
            let (ti, ri) = amplitudes(w)?;
            t.push(ti);
            r.push(ri);
        }
        Self::new(grid, t, r)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn t(&self) -> &[Amplitude] {
        &self.t
    }

    pub fn r(&self) -> &[Amplitude] {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn transmission(&self) -> Vec<f64> {
        self.t.iter().map(|t| t.norm_sqr()).collect()
    }

    pub fn reflection(&self) -> Vec<f64> {
        self.r.iter().map(|r| r.norm_sqr()).collect()
    }

    pub fn probabilities(&self) -> impl Iterator<Item = Probabilities> + '_ {
        self.t
            .iter()
            .zip(&self.r)
            .map(|(&t, &r)| Probabilities::from_amplitudes(t, r))
    }

    /// Per-point loss `1 − |t|² − |r|²`.
    pub fn loss(&self) -> Vec<f64> {
        self.probabilities().map(|p| p.loss).collect()
    }
}
