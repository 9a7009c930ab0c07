//! Time-domain propagation of a single-excitation wave packet on a resonator
//! lattice with attached emitters.
//!
//! Integrates `i du/dt = H u` with classical fixed-step RK4. `H` has on-site
//! energy `ω_c`, hopping `−ξ` and emitter couplings `g`; it is applied in the
//! frame rotating at `ω_c`, which leaves all populations unchanged.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::chain::EmitterAttachment;
use crate::error::{ensure_finite, Error, Result};

/// Largest tolerated change of the total norm.
pub const MAX_NORM_DRIFT: f64 = 1e-6;
/// Population near either chain end that invalidates a run.
pub const BOUNDARY_POPULATION: f64 = 1e-10;
/// Sites at each end watched for boundary contact.
pub const BOUNDARY_SITES: usize = 10;
/// Emitter population below which scattering counts as complete.
pub const SETTLED_POPULATION: f64 = 1e-6;
/// Required centroid separation from the emitter, in packet widths.
pub const SETTLED_WIDTHS: f64 = 5.0;

/// Spatial Gaussian wave packet on the lattice.
///
/// `u_j ∝ exp(−(j − center)² / 4w²) e^{i k0 j}`, so `|u|²` has standard
/// deviation `w = width` sites and the wave-number spread is `1 / 2w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpatialPacket {
    pub center: f64,
    pub width: f64,
    pub carrier: f64,
}

impl SpatialPacket {
    pub fn wave_number_spread(&self) -> f64 {
        0.5 / self.width
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropagationConfig {
    pub lattice_length: usize,
    #[serde(default)]
    pub omega_c: f64,
    pub xi: f64,
    pub emitters: Vec<EmitterAttachment>,
    pub packet: SpatialPacket,
    /// Integrator step; `0.05 / ξ` when absent.
    #[serde(default)]
    pub dt: Option<f64>,
    /// Hard limit on simulated time.
    pub t_max: f64,
    /// Keep a full `(time, site, |u|²)` snapshot every this many steps.
    #[serde(default)]
    pub sample_every: Option<usize>,
}

impl PropagationConfig {
    pub fn step(&self) -> f64 {
        self.dt.unwrap_or(0.05 / self.xi)
    }

    fn check(&self) -> Result<()> {
        ensure_finite(self.omega_c, "omega_c")?;
        if !(self.xi > 0.0 && self.xi.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "xi",
                reason: "must be positive".into(),
            });
        }
        if self.lattice_length < 2 * BOUNDARY_SITES + 3 {
            return Err(Error::InvalidParameter {
                field: "lattice_length",
                reason: format!("lattice of {} sites is too short", self.lattice_length),
            });
        }
        let dt = self.step();
        // RK4 is stable on the imaginary axis up to |λ dt| = 2√2
        let spectral_radius = 2.0 * self.xi
            + self
                .emitters
                .iter()
                .map(|e| e.g + (e.omega_e - self.omega_c).abs())
                .fold(0.0, f64::max);
        if !(dt > 0.0 && dt * spectral_radius < 2.0 * std::f64::consts::SQRT_2) {
            return Err(Error::InvalidParameter {
                field: "dt",
                reason: format!("step {dt} violates the RK4 stability bound"),
            });
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(Error::InvalidParameter {
                field: "t_max",
                reason: "must be positive and finite".into(),
            });
        }
        let p = &self.packet;
        if !(p.width > 0.0 && p.width.is_finite()) || !p.center.is_finite() {
            return Err(Error::InvalidParameter {
                field: "packet",
                reason: "width must be positive and center finite".into(),
            });
        }
        if p.carrier <= 0.0 || p.carrier >= PI {
            return Err(Error::BandEdge(p.carrier));
        }
        for e in &self.emitters {
            ensure_finite(e.g, "g")?;
            ensure_finite(e.omega_e, "omega_e")?;
            if e.gamma_loss != 0.0 {
                return Err(Error::InvalidParameter {
                    field: "gamma_loss",
                    reason: "time-domain propagation is lossless".into(),
                });
            }
            if e.site < BOUNDARY_SITES || e.site + BOUNDARY_SITES >= self.lattice_length {
                return Err(Error::InvalidParameter {
                    field: "emitters",
                    reason: format!("emitter at site {} is too close to an end", e.site),
                });
            }
        }
        Ok(())
    }
}

/// Full state of the lattice and emitters.
#[derive(Debug, Clone, PartialEq)]
pub struct PropagationState {
    pub u_sites: Vec<Complex64>,
    pub u_emitters: Vec<Complex64>,
    pub time: f64,
}

impl PropagationState {
    pub fn norm(&self) -> f64 {
        self.u_sites
            .iter()
            .chain(&self.u_emitters)
            .map(|u| u.norm_sqr())
            .sum()
    }

    pub fn emitter_population(&self) -> f64 {
        self.u_emitters.iter().map(|u| u.norm_sqr()).sum()
    }
}

/// One row of the optional trajectory dump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectorySample {
    pub time: f64,
    pub site: usize,
    pub population: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationResult {
    /// Population beyond the last emitter.
    pub transmission: f64,
    /// Population before the first emitter.
    pub reflection: f64,
    pub emitter_population: f64,
    pub norm_drift: f64,
    pub final_state: PropagationState,
    pub trajectory: Vec<TrajectorySample>,
}

struct Lattice<'a> {
    xi: f64,
    emitters: &'a [EmitterAttachment],
    /// emitter energies in the rotating frame
    offsets: Vec<f64>,
}

impl Lattice<'_> {
    /// `out = −i H u`
    fn derivative(
        &self,
        sites: &[Complex64],
        em: &[Complex64],
        d_sites: &mut [Complex64],
        d_em: &mut [Complex64],
    ) {
        let n = sites.len();
        let minus_i = Complex64::new(0.0, -1.0);
        let hop = Complex64::new(0.0, self.xi); // −i · (−ξ)
        d_sites[0] = hop * sites[1];
        for j in 1..n - 1 {
            d_sites[j] = hop * (sites[j - 1] + sites[j + 1]);
        }
        d_sites[n - 1] = hop * sites[n - 2];
        for (idx, e) in self.emitters.iter().enumerate() {
            d_sites[e.site] += minus_i * e.g * em[idx];
            d_em[idx] = minus_i * (self.offsets[idx] * em[idx] + e.g * sites[e.site]);
        }
    }
}

fn initial_state(config: &PropagationConfig) -> PropagationState {
    let p = &config.packet;
    let mut u_sites: Vec<Complex64> = (0..config.lattice_length)
        .map(|j| {
            let x = j as f64 - p.center;
            Complex64::from_polar(
                (-x * x / (4.0 * p.width * p.width)).exp(),
                p.carrier * j as f64,
            )
        })
        .collect();
    let norm: f64 = u_sites.iter().map(|u| u.norm_sqr()).sum();
    let scale = norm.sqrt().recip();
    u_sites.iter_mut().for_each(|u| *u *= scale);
    PropagationState {
        u_sites,
        u_emitters: vec![Complex64::new(0.0, 0.0); config.emitters.len()],
        time: 0.0,
    }
}

/// Propagate until scattering completes, then split the lattice population
/// at the emitters.
///
/// Scattering is complete once the incident centroid would have reached the
/// first emitter, the emitter population is below [`SETTLED_POPULATION`],
/// every outgoing part carrying more than 1e−3 of the population has its
/// centroid more than [`SETTLED_WIDTHS`] packet widths from the emitters, and
/// the lattice population within that distance of the emitters is also below
/// [`SETTLED_POPULATION`].
pub fn propagate_packet(config: &PropagationConfig) -> Result<PropagationResult> {
    config.check()?;
    let n = config.lattice_length;
    let m = config.emitters.len();
    let dt = config.step();
    let lattice = Lattice {
        xi: config.xi,
        emitters: &config.emitters,
        offsets: config
            .emitters
            .iter()
            .map(|e| e.omega_e - config.omega_c)
            .collect(),
    };
    let first = config
        .emitters
        .iter()
        .map(|e| e.site)
        .min()
        .unwrap_or(n / 2);
    let last = config
        .emitters
        .iter()
        .map(|e| e.site)
        .max()
        .unwrap_or(n / 2);

    let mut state = initial_state(config);
    let norm0 = state.norm();
    let group_velocity = 2.0 * config.xi * config.packet.carrier.sin();
    let arrival = ((first as f64 - config.packet.center) / group_velocity).max(0.0);
    let check_every = ((1.0 / (config.xi * dt)).ceil() as usize).max(1);

    let zero = Complex64::new(0.0, 0.0);
    let mut k_sites = [vec![zero; n], vec![zero; n], vec![zero; n], vec![zero; n]];
    let mut k_em = [vec![zero; m], vec![zero; m], vec![zero; m], vec![zero; m]];
    let mut tmp_sites = vec![zero; n];
    let mut tmp_em = vec![zero; m];
    let mut trajectory = Vec::new();
    let record = |state: &PropagationState, out: &mut Vec<TrajectorySample>| {
        out.extend(
            state
                .u_sites
                .iter()
                .enumerate()
                .map(|(site, u)| TrajectorySample {
                    time: state.time,
                    site,
                    population: u.norm_sqr(),
                }),
        );
    };
    if config.sample_every.is_some() {
        record(&state, &mut trajectory);
    }

    let mut step = 0usize;
    loop {
        // RK4
        lattice.derivative(
            &state.u_sites,
            &state.u_emitters,
            &mut k_sites[0],
            &mut k_em[0],
        );
        for stage in 1..4 {
            let h = if stage == 3 { dt } else { 0.5 * dt };
            let (done, rest) = k_sites.split_at_mut(stage);
            let (done_em, rest_em) = k_em.split_at_mut(stage);
            for j in 0..n {
                tmp_sites[j] = state.u_sites[j] + done[stage - 1][j] * h;
            }
            for j in 0..m {
                tmp_em[j] = state.u_emitters[j] + done_em[stage - 1][j] * h;
            }
            lattice.derivative(&tmp_sites, &tmp_em, &mut rest[0], &mut rest_em[0]);
        }
        let w = dt / 6.0;
        for (j, u) in state.u_sites.iter_mut().enumerate() {
            *u += (k_sites[0][j] + (k_sites[1][j] + k_sites[2][j]) * 2.0 + k_sites[3][j]) * w;
        }
        for (j, u) in state.u_emitters.iter_mut().enumerate() {
            *u += (k_em[0][j] + (k_em[1][j] + k_em[2][j]) * 2.0 + k_em[3][j]) * w;
        }
        step += 1;
        state.time = step as f64 * dt;

        if let Some(every) = config.sample_every {
            if every > 0 && step.is_multiple_of(every) {
                record(&state, &mut trajectory);
            }
        }

        if !step.is_multiple_of(check_every) {
            continue;
        }
        let edge: f64 = state.u_sites[..BOUNDARY_SITES]
            .iter()
            .chain(&state.u_sites[n - BOUNDARY_SITES..])
            .map(|u| u.norm_sqr())
            .sum();
        if edge > BOUNDARY_POPULATION {
            return Err(Error::BoundaryTouched(edge));
        }
        let drift = (state.norm() - norm0).abs();
        if drift > MAX_NORM_DRIFT {
            return Err(Error::NormDrift(drift));
        }
        if state.time >= arrival && settled(&state, first, last, config.packet.width) {
            let reflection = state.u_sites[..first].iter().map(|u| u.norm_sqr()).sum();
            let transmission = state.u_sites[last + 1..].iter().map(|u| u.norm_sqr()).sum();
            return Ok(PropagationResult {
                transmission,
                reflection,
                emitter_population: state.emitter_population(),
                norm_drift: drift,
                final_state: state,
                trajectory,
            });
        }
        if state.time > config.t_max {
            return Err(Error::NotSettled(config.t_max));
        }
    }
}

fn settled(state: &PropagationState, first: usize, last: usize, width: f64) -> bool {
    if state.emitter_population() >= SETTLED_POPULATION {
        return false;
    }
    let part = |range: std::ops::Range<usize>, anchor: usize| -> bool {
        let (mass, moment) = range.fold((0.0, 0.0), |(m, s), j| {
            let p = state.u_sites[j].norm_sqr();
            (m + p, s + p * j as f64)
        });
        mass < 1e-3 || (moment / mass - anchor as f64).abs() > SETTLED_WIDTHS * width
    };
    let n = state.u_sites.len();
    let reach = (SETTLED_WIDTHS * width).ceil() as usize;
    let window = first.saturating_sub(reach)..(last + reach + 1).min(n);
    let near: f64 = state.u_sites[window].iter().map(|u| u.norm_sqr()).sum();
    near < SETTLED_POPULATION && part(0..first, first) && part(last + 1..n, last)
}
