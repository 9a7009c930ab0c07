//! Transfer-matrix composition of localized scatterers separated by free
//! propagation.
//!
//! Field amplitudes on either side of a scatterer are the pair
//! `(right-moving, left-moving)`, each referenced to the scatterer's own
//! position. For a symmetric scatterer with amplitudes `(t, r)` the matrix
//! mapping left-side to right-side amplitudes is
//!
//! ```text
//!     | (t² − r²)/t   r/t |
//! M = |                   |
//!     |   −r/t        1/t |
//! ```
//!
//! which follows from `a_R = t a_L + r b_R`, `b_L = r a_L + t b_R` and has unit
//! determinant. Free propagation over a length `d` is `diag(e^{ikd}, e^{−ikd})`.
//! A cascade is the ordered product, and the composite amplitudes are
//! `t_N = 1/M₂₂`, `r_N = −M₂₁/M₂₂` with reflection referenced to the first site
//! and transmission to the last.

use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    Amplitude, CavityParams, CrwParams, EmitterWaveguideParams, Frame, FrequencyGrid,
    SpectralResponse, FLUX_SLACK,
};
use crate::{cavity, continuum, crw};

/// Smallest `|t|` for which a site still has a finite transfer matrix.
pub const MIN_TRANSMISSION: f64 = 1e-12;

/// Amplitudes of one symmetric scatterer at one frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiteScatterer {
    pub t: Amplitude,
    pub r: Amplitude,
}

impl SiteScatterer {
    pub fn new(t: Amplitude, r: Amplitude) -> Result<Self> {
        let flux = t.norm_sqr() + r.norm_sqr();
        if flux > 1.0 + FLUX_SLACK {
            return Err(Error::InvalidParameter {
                field: "site",
                reason: format!("|t|^2 + |r|^2 = {flux} exceeds 1"),
            });
        }
        Ok(Self { t, r })
    }
}

/// 2×2 complex transfer matrix acting on `(right-moving, left-moving)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferMatrix(pub [[Complex64; 2]; 2]);

impl TransferMatrix {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self([[one, zero], [zero, one]])
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Left-incidence transmission `1/M₂₂` and reflection `−M₂₁/M₂₂`.
    pub fn amplitudes(&self) -> (Amplitude, Amplitude) {
        let m = &self.0;
        (m[1][1].inv(), -m[1][0] / m[1][1])
    }

    /// Reflection for a photon incident from the right, `M₁₂/M₂₂`.
    pub fn right_reflection(&self) -> Amplitude {
        self.0[0][1] / self.0[1][1]
    }
}

impl Mul for TransferMatrix {
    type Output = TransferMatrix;

    fn mul(self, rhs: TransferMatrix) -> TransferMatrix {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        TransferMatrix(out)
    }
}

pub fn site_matrix(site: &SiteScatterer) -> Result<TransferMatrix> {
    let SiteScatterer { t, r } = *site;
    if t.norm() <= MIN_TRANSMISSION {
        return Err(Error::NearTotalReflection(t.norm()));
    }
    Ok(TransferMatrix([
        [(t * t - r * r) / t, r / t],
        [-r / t, t.inv()],
    ]))
}

pub fn propagation_matrix(k: f64, d: f64) -> TransferMatrix {
    let phase = Complex64::from_polar(1.0, k * d);
    TransferMatrix([
        [phase, Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), phase.conj()],
    ])
}

/// One scatterer in a cascade.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "kebab-case")]
pub enum Site {
    Continuum(EmitterWaveguideParams),
    Cavity(CavityParams),
    Crw(CrwParams),
}

impl Site {
    /// Amplitudes at absolute frequency `omega` with propagation wave
    /// number `k`. Lattice sites use `k`; the others use `omega`.
    pub fn scatterer(&self, omega: f64, k: f64) -> Result<SiteScatterer> {
        let (t, r) = match self {
            Site::Continuum(p) => continuum::amplitudes_at(p, omega)?,
            Site::Cavity(p) => cavity::amplitudes(p, omega)?,
            Site::Crw(p) => crw::amplitudes(p, k)?,
        };
        Ok(SiteScatterer { t, r })
    }

    /// The frequency detuning frames are measured from.
    fn reference(&self, frame: Frame) -> f64 {
        match (self, frame) {
            (_, Frame::Absolute) => 0.0,
            (Site::Continuum(p), _) => p.omega_e,
            (Site::Cavity(p), Frame::DetuningFromEmitter) => p.omega_e,
            (Site::Cavity(p), _) => p.omega_c,
            (Site::Crw(p), Frame::DetuningFromEmitter) => p.omega_e,
            (Site::Crw(p), _) => p.omega_c,
        }
    }
}

/// Wave number of the guided mode as a function of frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Dispersion {
    /// `k = k_ref + (ω − ω_ref) / v_g`.
    Linear {
        k_ref: f64,
        #[serde(default)]
        omega_ref: f64,
        #[serde(default = "unit_velocity")]
        group_velocity: f64,
    },
    /// Coupled-resonator band, positive branch.
    Lattice { omega_c: f64, xi: f64 },
}

fn unit_velocity() -> f64 {
    1.0
}

impl Dispersion {
    pub fn linear(k_ref: f64) -> Self {
        Dispersion::Linear {
            k_ref,
            omega_ref: 0.0,
            group_velocity: 1.0,
        }
    }

    pub fn lattice(params: &CrwParams) -> Self {
        Dispersion::Lattice {
            omega_c: params.omega_c,
            xi: params.xi,
        }
    }

    pub fn wave_number(&self, omega: f64) -> Result<f64> {
        match *self {
            Dispersion::Linear {
                k_ref,
                omega_ref,
                group_velocity,
            } => {
                if !(group_velocity > 0.0 && group_velocity.is_finite()) {
                    return Err(Error::InvalidParameter {
                        field: "group_velocity",
                        reason: "must be positive and finite".into(),
                    });
                }
                Ok(k_ref + (omega - omega_ref) / group_velocity)
            }
            Dispersion::Lattice { omega_c, xi } => {
                let lattice = CrwParams::resonant(omega_c, xi, 0.0);
                crw::inverse_dispersion(&lattice, omega)
            }
        }
    }
}

/// Ordered scatterers and the free-propagation lengths between them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CascadeLayout {
    pub sites: Vec<Site>,
    pub separations: Vec<f64>,
}

impl CascadeLayout {
    pub fn new(sites: Vec<Site>, separations: Vec<f64>) -> Result<Self> {
        let layout = Self { sites, separations };
        layout.check()?;
        Ok(layout)
    }

    /// `n` copies of `site` with equal spacing `d`.
    pub fn uniform(site: Site, n: usize, d: f64) -> Result<Self> {
        Self::new(vec![site; n], vec![d; n.saturating_sub(1)])
    }

    pub fn check(&self) -> Result<()> {
        if self.sites.is_empty() {
            return Err(Error::InvalidParameter {
                field: "sites",
                reason: "cascade needs at least one site".into(),
            });
        }
        if self.separations.len() + 1 != self.sites.len() {
            return Err(Error::InvalidParameter {
                field: "separations",
                reason: format!(
                    "expected {} separations for {} sites, got {}",
                    self.sites.len() - 1,
                    self.sites.len(),
                    self.separations.len()
                ),
            });
        }
        if let Some(d) = self
            .separations
            .iter()
            .find(|d| !(**d > 0.0 && d.is_finite()))
        {
            return Err(Error::InvalidParameter {
                field: "separations",
                reason: format!("separation {d} is not positive and finite"),
            });
        }
        Ok(())
    }
}

/// Composite amplitudes of `sites` at one frequency. A site with
/// `|t| ≤ MIN_TRANSMISSION` acts as a mirror: the result has `t = 0` and the
/// reflection of everything before it terminated by that mirror.
///
/// Returns the amplitudes and whether a blocking site was hit.
pub fn compose(
    sites: &[SiteScatterer],
    separations: &[f64],
    k: f64,
) -> Result<((Amplitude, Amplitude), bool)> {
    let mut total = TransferMatrix::identity();
    for (i, site) in sites.iter().enumerate() {
        if i > 0 {
            total = propagation_matrix(k, separations[i - 1]) * total;
        }
        match site_matrix(site) {
            Ok(m) => total = m * total,
            Err(Error::NearTotalReflection(_)) => {
                // total already includes the gap up to this site
                let (t_a, r_a) = total.amplitudes();
                let r_back = total.right_reflection();
                let r = r_a + t_a * t_a * site.r / (1.0 - r_back * site.r);
                return Ok(((Complex64::new(0.0, 0.0), r), true));
            }
            Err(e) => return Err(e),
        }
    }
    Ok((total.amplitudes(), false))
}

/// Cascade spectrum plus the number of grid points where a site blocked
/// transmission entirely.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeSweep {
    pub response: SpectralResponse,
    pub blocked_points: usize,
}

/// Spectrum of the cascade on `grid`. Detuning frames refer to the first
/// site.
pub fn cascade_amplitudes(
    layout: &CascadeLayout,
    grid: &FrequencyGrid,
    dispersion: &Dispersion,
) -> Result<CascadeSweep> {
    layout.check()?;
    let origin = layout.sites[0].reference(grid.frame());
    let mut blocked_points = 0;
    let mut scatterers = Vec::with_capacity(layout.sites.len());
    let response = SpectralResponse::from_fn(grid.clone(), |x| {
        let omega = origin + x;
        let k = dispersion.wave_number(omega)?;
        scatterers.clear();
        for site in &layout.sites {
            scatterers.push(site.scatterer(omega, k)?);
        }
        let (amps, blocked) = compose(&scatterers, &layout.separations, k)?;
        blocked_points += usize::from(blocked);
        Ok(amps)
    })?;
    Ok(CascadeSweep {
        response,
        blocked_points,
    })
}

/// Width of the contiguous region around the global reflection maximum
/// where `R ≥ threshold`, with linear interpolation at the crossings.
/// Zero if the maximum is below the threshold.
pub fn reflection_bandwidth(response: &SpectralResponse, threshold: f64) -> f64 {
    let refl = response.reflection();
    let x = response.grid().points();
    let peak = (0..refl.len())
        .max_by(|&a, &b| refl[a].total_cmp(&refl[b]).then(b.cmp(&a)))
        .unwrap_or(0);
    if refl.is_empty() || refl[peak] < threshold {
        return 0.0;
    }
    let crossing = |inside: usize, outside: usize| {
        let (ri, ro) = (refl[inside], refl[outside]);
        x[outside] + (threshold - ro) / (ri - ro) * (x[inside] - x[outside])
    };
    let mut lo = peak;
    while lo > 0 && refl[lo - 1] >= threshold {
        lo -= 1;
    }
    let left = if lo == 0 { x[0] } else { crossing(lo, lo - 1) };
    let mut hi = peak;
    while hi + 1 < refl.len() && refl[hi + 1] >= threshold {
        hi += 1;
    }
    let right = if hi + 1 == refl.len() {
        x[hi]
    } else {
        crossing(hi, hi + 1)
    };
    right - left
}
