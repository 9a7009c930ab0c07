//! Steady-state scattering on a finite resonator chain.
//!
//! Each emitter is eliminated through its site self-energy
//! `g² / (E − ω_e + iγ/2)`, leaving a tridiagonal system over the sites. The
//! chain ends carry exact plane-wave boundary rows: on the left,
//! `u_{−1} = e^{ik} u_0 − 2i sin k · e^{ikx_0}` (incident wave plus an unknown
//! reflected wave), on the right `u_N = e^{ik} u_{N−1}` (outgoing only). The
//! solution is therefore independent of chain length, up to rounding.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::tridiag;
use crate::crw;
use crate::error::{ensure_finite, Error, Result};
use crate::model::{Amplitude, CrwParams, Validate};

/// Minimum distance between an emitter and either chain end.
pub const MIN_EDGE_DISTANCE: usize = 10;
/// Smallest accepted chain.
pub const MIN_SITES: usize = 41;

/// An emitter attached to one resonator of the chain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmitterAttachment {
    pub site: usize,
    pub g: f64,
    pub omega_e: f64,
    #[serde(default)]
    pub gamma_loss: f64,
}

/// A finite chain with emitters and a right-moving incident plane wave.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteChainProblem {
    pub n_sites: usize,
    pub omega_c: f64,
    pub xi: f64,
    pub emitters: Vec<EmitterAttachment>,
    /// Incident wave number in `(0, π)`.
    pub k_in: f64,
}

impl FiniteChainProblem {
    /// One emitter described by `params`, attached to the central site.
    pub fn single(params: &CrwParams, n_sites: usize, k_in: f64) -> Self {
        Self {
            n_sites,
            omega_c: params.omega_c,
            xi: params.xi,
            emitters: vec![EmitterAttachment {
                site: n_sites / 2,
                g: params.g,
                omega_e: params.omega_e,
                gamma_loss: params.gamma_loss,
            }],
            k_in,
        }
    }

    /// Identical emitters `spacing` sites apart, centred in the chain.
    pub fn array(
        params: &CrwParams,
        count: usize,
        spacing: usize,
        n_sites: usize,
        k_in: f64,
    ) -> Self {
        let span = spacing * count.saturating_sub(1);
        let first = (n_sites / 2).saturating_sub(span / 2);
        let emitters = (0..count)
            .map(|i| EmitterAttachment {
                site: first + i * spacing,
                g: params.g,
                omega_e: params.omega_e,
                gamma_loss: params.gamma_loss,
            })
            .collect();
        Self {
            n_sites,
            omega_c: params.omega_c,
            xi: params.xi,
            emitters,
            k_in,
        }
    }

    pub fn check(&self) -> Result<()> {
        let lattice = CrwParams::resonant(self.omega_c, self.xi, 0.0);
        lattice.validate()?;
        if self.n_sites < MIN_SITES || self.n_sites.is_multiple_of(2) {
            return Err(Error::InvalidParameter {
                field: "n_sites",
                reason: format!(
                    "need an odd count of at least {MIN_SITES}, got {}",
                    self.n_sites
                ),
            });
        }
        ensure_finite(self.k_in, "k_in")?;
        if self.k_in <= 0.0 || self.k_in >= PI {
            return Err(Error::BandEdge(self.k_in));
        }
        for e in &self.emitters {
            let emitter = CrwParams {
                g: e.g,
                omega_e: e.omega_e,
                gamma_loss: e.gamma_loss,
                ..lattice
            };
            emitter.validate()?;
            if e.site < MIN_EDGE_DISTANCE || e.site + MIN_EDGE_DISTANCE >= self.n_sites {
                return Err(Error::InvalidParameter {
                    field: "emitters",
                    reason: format!(
                        "emitter at site {} is within {MIN_EDGE_DISTANCE} sites of a chain end",
                        e.site
                    ),
                });
            }
        }
        Ok(())
    }

    /// Photon energy of the incident wave.
    pub fn energy(&self) -> f64 {
        self.omega_c - 2.0 * self.xi * self.k_in.cos()
    }

    /// Sites used as reference planes: reflection is referenced to the first
    /// emitter, transmission to the last. Without emitters both are the
    /// central site.
    fn reference_sites(&self) -> (usize, usize) {
        let sites = self.emitters.iter().map(|e| e.site);
        match (sites.clone().min(), sites.max()) {
            (Some(a), Some(b)) => (a, b),
            _ => (self.n_sites / 2, self.n_sites / 2),
        }
    }
}

/// Solve the chain and return `(t, r)`.
pub fn finite_chain_solve(problem: &FiniteChainProblem) -> Result<(Amplitude, Amplitude)> {
    let (sites, _) = solve_sites(problem)?;
    let (left_ref, right_ref) = problem.reference_sites();
    let k = problem.k_in;
    let n = problem.n_sites;

    let x0 = -(left_ref as f64);
    let incident = Complex64::from_polar(1.0, k * x0);
    let r = (sites[0] - incident) * Complex64::from_polar(1.0, k * x0);
    let x_last = (n - 1 - right_ref) as f64;
    let t = sites[n - 1] * Complex64::from_polar(1.0, -k * x_last);
    Ok((t, r))
}

/// Site amplitudes and emitter amplitudes of the steady state.
pub fn solve_sites(problem: &FiniteChainProblem) -> Result<(Vec<Amplitude>, Vec<Amplitude>)> {
    problem.check()?;
    let n = problem.n_sites;
    let k = problem.k_in;
    let xi = problem.xi;
    let energy = problem.energy();
    let zero = Complex64::new(0.0, 0.0);
    let outgoing = Complex64::from_polar(1.0, k);

    let mut diag = vec![Complex64::new(problem.omega_c - energy, 0.0); n];
    let lower = vec![Complex64::new(-xi, 0.0); n - 1];
    let mut upper = vec![Complex64::new(-xi, 0.0); n - 1];
    let mut rhs = vec![zero; n];

    diag[0] -= xi * outgoing;
    diag[n - 1] -= xi * outgoing;
    let (left_ref, _) = problem.reference_sites();
    let incident0 = Complex64::from_polar(1.0, -k * left_ref as f64);
    rhs[0] = Complex64::new(0.0, -2.0 * xi * k.sin()) * incident0;

    let mut pinned = vec![false; n];
    for e in &problem.emitters {
        let detuning = Complex64::new(energy - e.omega_e, 0.5 * e.gamma_loss);
        if e.g == 0.0 {
            continue;
        }
        if detuning.norm() == 0.0 {
            // infinite self-energy: the emitter clamps its site to zero
            pinned[e.site] = true;
        } else {
            diag[e.site] += e.g * e.g / detuning;
        }
    }
    let mut lower = lower;
    for (j, _) in pinned.iter().enumerate().filter(|(_, p)| **p) {
        diag[j] = Complex64::new(1.0, 0.0);
        rhs[j] = zero;
        if j > 0 {
            lower[j - 1] = zero;
        }
        if j + 1 < n {
            upper[j] = zero;
        }
    }

    let sites = tridiag::solve(lower, diag, upper, rhs)?;

    let emitters = problem
        .emitters
        .iter()
        .map(|e| {
            let detuning = Complex64::new(energy - e.omega_e, 0.5 * e.gamma_loss);
            if e.g == 0.0 {
                zero
            } else if detuning.norm() == 0.0 {
                // site equation: g u_e = (E − ω_c) u_s + ξ (u_{s−1} + u_{s+1})
                let s = e.site;
                (xi * (sites[s - 1] + sites[s + 1])) / e.g
            } else {
                e.g * sites[e.site] / detuning
            }
        })
        .collect();
    Ok((sites, emitters))
}

/// Detuning of a lattice carrier from the emitter, `ω_{k0} − ω_e`.
pub fn carrier_to_detuning(k0: f64, params: &CrwParams) -> Result<f64> {
    params.validate()?;
    ensure_finite(k0, "k0")?;
    if k0 <= 0.0 || k0 >= PI {
        return Err(Error::BandEdge(k0));
    }
    Ok(crw::dispersion(params, k0) - params.omega_e)
}
