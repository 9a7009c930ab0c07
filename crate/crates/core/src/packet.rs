//! Wave-packet envelopes and switch figures of merit.
//!
//! For a spectral envelope `f(ω)` with `∫|f|² dω = 1`:
//!
//! * routing probabilities `p_t = ∫|t|²|f|² dω`, `p_r = ∫|r|²|f|² dω`
//! * efficiencies `E_t = |p_t|²`, `E_r = |p_r|²` (the outer modulus-square is
//!   kept as defined; `p_t`, `p_r` are the usual probabilities)
//! * fidelities `F_t = |∫ t |f|² dω|²`, `F_r = |∫ r |f|² dω|²`, which are
//!   phase sensitive

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::model::{Amplitude, FrequencyGrid, SpectralResponse};
use crate::quadrature::integrate;

/// Largest envelope mass allowed outside the grid.
pub const MAX_TAIL_MASS: f64 = 1e-8;

/// Floor applied to transmitted probabilities in the extinction ratio.
pub const EXTINCTION_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shape {
    Gaussian,
    Sampled,
}

/// Normalized spectral envelope sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct WavePacket {
    grid: FrequencyGrid,
    f: Vec<Amplitude>,
    center: f64,
    width: f64,
    shape: Shape,
}

impl WavePacket {
    /// Arbitrary complex envelope; rescaled to unit norm on the grid.
    pub fn from_samples(
        grid: FrequencyGrid,
        f: Vec<Amplitude>,
        center: f64,
        width: f64,
    ) -> Result<Self> {
        if f.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        if f.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::NonFinite("envelope"));
        }
        let mut packet = Self {
            grid,
            f,
            center,
            width,
            shape: Shape::Sampled,
        };
        let norm = packet.norm();
        if norm <= 0.0 {
            return Err(Error::InvalidParameter {
                field: "f",
                reason: "envelope has zero norm".into(),
            });
        }
        let scale = norm.sqrt().recip();
        packet.f.iter_mut().for_each(|v| *v *= scale);
        Ok(packet)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn envelope(&self) -> &[Amplitude] {
        &self.f
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Spectral density `|f(ω)|²`.
    pub fn density(&self) -> Vec<f64> {
        self.f.iter().map(|v| v.norm_sqr()).collect()
    }

    /// `∫|f|² dω` under the module quadrature.
    pub fn norm(&self) -> f64 {
        integrate(&self.grid, &self.density())
    }

    /// The same packet on another grid. Gaussian packets are regenerated
    /// exactly; sampled envelopes are linearly interpolated (zero outside the
    /// original grid) and renormalized.
    pub fn resampled(&self, grid: &FrequencyGrid) -> Result<Self> {
        match self.shape {
            Shape::Gaussian => gaussian_packet(self.center, self.width, grid),
            Shape::Sampled => {
                let src = self.grid.points();
                let f = grid
                    .points()
                    .iter()
                    .map(|&x| interpolate(src, &self.f, x))
                    .collect();
                Self::from_samples(grid.clone(), f, self.center, self.width)
            }
        }
    }
}

fn interpolate(x: &[f64], y: &[Amplitude], at: f64) -> Amplitude {
    if at < x[0] || at > x[x.len() - 1] {
        return Complex64::new(0.0, 0.0);
    }
    let i = x.partition_point(|&v| v <= at).clamp(1, x.len() - 1);
    let w = (at - x[i - 1]) / (x[i] - x[i - 1]);
    y[i - 1] * (1.0 - w) + y[i] * w
}

/// Gaussian envelope whose density `|f|²` is a normal distribution with mean
/// `center` and standard deviation `sigma`. Zero phase.
pub fn gaussian_packet(center: f64, sigma: f64, grid: &FrequencyGrid) -> Result<WavePacket> {
    ensure_finite(center, "center")?;
    ensure_finite(sigma, "sigma")?;
    if sigma <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "sigma",
            reason: "must be positive".into(),
        });
    }
    let scale = std::f64::consts::SQRT_2 * sigma;
    let tail = 0.5 * libm::erfc((center - grid.first()) / scale)
        + 0.5 * libm::erfc((grid.last() - center) / scale);
    if tail > MAX_TAIL_MASS {
        return Err(Error::PacketNotContained(tail));
    }
    let amp = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25);
    let f = grid
        .points()
        .iter()
        .map(|&w| {
            let x = (w - center) / sigma;
            Complex64::new(amp * (-0.25 * x * x).exp(), 0.0)
        })
        .collect();
    let mut packet = WavePacket::from_samples(grid.clone(), f, center, sigma)?;
    packet.shape = Shape::Gaussian;
    Ok(packet)
}

fn check_grids(response: &SpectralResponse, packet: &WavePacket) -> Result<()> {
    if response.grid().points() == packet.grid().points() {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

/// Routing probabilities and efficiencies of a packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Efficiency {
    pub e_t: f64,
    pub e_r: f64,
    pub p_t: f64,
    pub p_r: f64,
}

pub fn efficiency(response: &SpectralResponse, packet: &WavePacket) -> Result<Efficiency> {
    check_grids(response, packet)?;
    let density = packet.density();
    let weighted = |probs: Vec<f64>| -> f64 {
        let y: Vec<f64> = probs.iter().zip(&density).map(|(p, d)| p * d).collect();
        integrate(packet.grid(), &y)
    };
    let p_t = weighted(response.transmission());
    let p_r = weighted(response.reflection());
    Ok(Efficiency {
        e_t: p_t * p_t,
        e_r: p_r * p_r,
        p_t,
        p_r,
    })
}

/// `(F_t, F_r)`.
pub fn fidelity(response: &SpectralResponse, packet: &WavePacket) -> Result<(f64, f64)> {
    check_grids(response, packet)?;
    let density = packet.density();
    let overlap = |amps: &[Amplitude]| -> f64 {
        let y: Vec<Complex64> = amps.iter().zip(&density).map(|(a, d)| a * *d).collect();
        integrate(packet.grid(), &y).norm_sqr()
    };
    Ok((overlap(response.t()), overlap(response.r())))
}

/// Figures of merit of a two-state switch. Efficiencies, fidelities and
/// probabilities describe the on state; `contrast` and `extinction_db`
/// compare the two states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwitchReport {
    pub e_t: f64,
    pub e_r: f64,
    pub f_t: f64,
    pub f_r: f64,
    pub p_t: f64,
    pub p_r: f64,
    /// `p_r(on) − p_r(off)`.
    pub contrast: f64,
    /// `10·log10(p_t(off) / p_t(on))`, both floored at [`EXTINCTION_FLOOR`].
    pub extinction_db: f64,
}

pub fn switch_report(
    response_on: &SpectralResponse,
    response_off: &SpectralResponse,
    packet: &WavePacket,
) -> Result<SwitchReport> {
    let on = efficiency(response_on, packet)?;
    let off = efficiency(response_off, packet)?;
    let (f_t, f_r) = fidelity(response_on, packet)?;
    let extinction_db =
        10.0 * (off.p_t.max(EXTINCTION_FLOOR) / on.p_t.max(EXTINCTION_FLOOR)).log10();
    Ok(SwitchReport {
        e_t: on.e_t,
        e_r: on.e_r,
        f_t,
        f_r,
        p_t: on.p_t,
        p_r: on.p_r,
        contrast: on.p_r - off.p_r,
        extinction_db,
    })
}

/// Switch report for a monochromatic probe, given `(t, r)` in the on and off
/// states at the probe frequency. The packet integrals collapse to point
/// values.
pub fn monochromatic_report(
    on: (Amplitude, Amplitude),
    off: (Amplitude, Amplitude),
) -> SwitchReport {
    let (p_t, p_r) = (on.0.norm_sqr(), on.1.norm_sqr());
    let (off_t, off_r) = (off.0.norm_sqr(), off.1.norm_sqr());
    SwitchReport {
        e_t: p_t * p_t,
        e_r: p_r * p_r,
        f_t: p_t,
        f_r: p_r,
        p_t,
        p_r,
        contrast: p_r - off_r,
        extinction_db: 10.0 * (off_t.max(EXTINCTION_FLOOR) / p_t.max(EXTINCTION_FLOOR)).log10(),
    }
}
