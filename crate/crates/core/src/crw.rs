//! Emitter coupled to one site of an infinite coupled-resonator waveguide.
//!
//! Lattice constant is 1, so wave numbers are dimensionless and the band is
//! `ω_k = ω_c − 2ξ cos k`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::model::{Amplitude, CrwParams, Frame, FrequencyGrid, SpectralResponse, Validate};

/// Distance from the band edges used when a sweep touches them, `1e-9·π`.
pub const EDGE_EPSILON: f64 = 1e-9 * PI;

/// A point on the dispersion curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandPoint {
    pub k: f64,
    pub omega_k: f64,
}

pub fn dispersion(params: &CrwParams, k: f64) -> f64 {
    params.omega_c - 2.0 * params.xi * k.cos()
}

pub fn band_point(params: &CrwParams, k: f64) -> BandPoint {
    BandPoint {
        k,
        omega_k: dispersion(params, k),
    }
}

/// Positive-branch wave number `k ∈ (0, π)` of an in-band frequency.
pub fn inverse_dispersion(params: &CrwParams, omega: f64) -> Result<f64> {
    params.validate()?;
    ensure_finite(omega, "omega")?;
    let (lo, hi) = params.band();
    if omega <= lo || omega >= hi {
        return Err(Error::OutsideBand { omega, lo, hi });
    }
    Ok(((params.omega_c - omega) / (2.0 * params.xi)).acos())
}

/// Amplitudes for a right-moving photon of wave number `k ∈ (0, π)`.
///
/// With `D = 2iξ sin k (ω_k − ω_e + iγ/2) − g²`, `t = (D + g²)/D` and
/// `r = g²/D`. At the band edges the propagating solution degenerates
/// (limits `t → 0`, `r → −1`), so `k ∈ {0, π}` is rejected.
pub fn amplitudes(params: &CrwParams, k: f64) -> Result<(Amplitude, Amplitude)> {
    params.validate()?;
    ensure_finite(k, "k")?;
    if k <= 0.0 || k >= PI {
        return Err(Error::BandEdge(k));
    }
    let g2 = params.g * params.g;
    let detuning = Complex64::new(
        dispersion(params, k) - params.omega_e,
        0.5 * params.gamma_loss,
    );
    let propagating = Complex64::new(0.0, 2.0 * params.xi * k.sin()) * detuning;
    let denom = propagating - g2;
    Ok((propagating / denom, g2 / denom))
}

/// Amplitudes at an in-band absolute frequency.
pub fn amplitudes_at(params: &CrwParams, omega: f64) -> Result<(Amplitude, Amplitude)> {
    amplitudes(params, inverse_dispersion(params, omega)?)
}

/// `(T, R)` for an emitter resonant with the cavities, as a function of
/// `Δ = ω − ω_c` strictly inside `(−2ξ, 2ξ)`.
pub fn probabilities_resonant(params: &CrwParams, delta: f64) -> Result<(f64, f64)> {
    params.validate()?;
    ensure_finite(delta, "delta")?;
    let half_band = 2.0 * params.xi;
    if delta.abs() >= half_band {
        return Err(Error::OutsideBand {
            omega: params.omega_c + delta,
            lo: params.omega_c - half_band,
            hi: params.omega_c + half_band,
        });
    }
    let g4 = params.g.powi(4);
    let propagating = delta * delta * (half_band * half_band - delta * delta);
    let denom = propagating + g4;
    if denom == 0.0 {
        // g = 0 and Δ = 0: free propagation
        return Ok((1.0, 0.0));
    }
    Ok((propagating / denom, g4 / denom))
}

/// Spectrum on `grid`. Points at or beyond a band edge are clamped onto the
/// open band by [`EDGE_EPSILON`] in wave number.
pub fn spectrum(params: &CrwParams, grid: &FrequencyGrid) -> Result<SpectralResponse> {
    params.validate()?;
    let origin = match grid.frame() {
        Frame::Absolute => 0.0,
        Frame::DetuningFromEmitter => params.omega_e,
        Frame::DetuningFromCavity => params.omega_c,
    };
    SpectralResponse::from_fn(grid.clone(), |x| {
        amplitudes(params, clamped_wave_number(params, origin + x)?)
    })
}

/// Wave number for `omega`, clamped into `[ε, π − ε]`. Frequencies beyond the
/// band by more than one band width are rejected.
pub fn clamped_wave_number(params: &CrwParams, omega: f64) -> Result<f64> {
    ensure_finite(omega, "omega")?;
    let (lo, hi) = params.band();
    if omega < lo - 4.0 * params.xi || omega > hi + 4.0 * params.xi {
        return Err(Error::OutsideBand { omega, lo, hi });
    }
    let c = ((params.omega_c - omega) / (2.0 * params.xi)).clamp(-1.0, 1.0);
    Ok(c.acos().clamp(EDGE_EPSILON, PI - EDGE_EPSILON))
}
