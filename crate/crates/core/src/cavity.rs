//! Two-level emitter in a single-mode cavity side-coupled to a waveguide.
//!
//! Only the side-coupled geometry is modelled. For a cavity inserted in-line
//! with the waveguide the transmission and reflection spectra swap roles.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::model::{Amplitude, CavityParams, Frame, FrequencyGrid, SpectralResponse, Validate};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One rung of the resonant Jaynes-Cummings ladder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JcLevel {
    pub n: u32,
    pub e_plus: f64,
    pub e_minus: f64,
}

impl JcLevel {
    pub fn splitting(&self) -> f64 {
        self.e_plus - self.e_minus
    }
}

/// Dressed energies `E_n± = nω_c ± √n g` of the `n`-excitation manifold for a
/// resonant emitter (`ω_e = ω_c`) and real `g`.
pub fn jc_energies(n: u32, omega_c: f64, g: f64) -> Result<JcLevel> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            field: "n",
            reason: "the vacuum has no doublet; n must be at least 1".into(),
        });
    }
    ensure_finite(omega_c, "omega_c")?;
    ensure_finite(g, "g")?;
    if g < 0.0 {
        return Err(Error::InvalidParameter {
            field: "g",
            reason: "negative".into(),
        });
    }
    let n_f = f64::from(n);
    let center = n_f * omega_c;
    let half = n_f.sqrt() * g;
    Ok(JcLevel {
        n,
        e_plus: center + half,
        e_minus: center - half,
    })
}

/// Amplitudes at absolute frequency `omega`.
///
/// Evaluated in the form multiplied through by the emitter detuning
/// `Δ_e = ω − ω_e + iγ/2`, so the emitter resonance is not a pole:
///
/// ```text
/// t = (Δ_cΔ_e − g² − iΔ_e(Γ_R − Γ_L)/2) / (Δ_cΔ_e − g² + iΔ_e(Γ_R + Γ_L)/2)
/// r = −i√(Γ_LΓ_R)·Δ_e / (Δ_cΔ_e − g² + iΔ_e(Γ_R + Γ_L)/2)
/// ```
///
/// with `Δ_c = ω − ω_c + iκ/2`.
pub fn amplitudes(params: &CavityParams, omega: f64) -> Result<(Amplitude, Amplitude)> {
    params.validate()?;
    ensure_finite(omega, "omega")?;
    let guided = params.gamma_right + params.gamma_left;
    if guided == 0.0 {
        return Ok((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let delta_c = Complex64::new(omega - params.omega_c, 0.5 * params.kappa);
    let coupling = (params.gamma_left * params.gamma_right).sqrt();
    if params.g == 0.0 {
        // empty cavity; the Δ_e factor cancels identically
        let denom = delta_c + 0.5 * I * guided;
        let t = (delta_c - 0.5 * I * (params.gamma_right - params.gamma_left)) / denom;
        return Ok((t, -I * coupling / denom));
    }
    let delta_e = Complex64::new(omega - params.omega_e, 0.5 * params.gamma_loss);
    let dressed = delta_c * delta_e - params.g * params.g;
    let denom = dressed + 0.5 * I * delta_e * guided;
    let t = (dressed - 0.5 * I * delta_e * (params.gamma_right - params.gamma_left)) / denom;
    let r = -I * coupling * delta_e / denom;
    Ok((t, r))
}

/// Reflection probability at `probe` for two parameter sets that differ
/// only in `g`.
pub fn rabi_switch_contrast(
    params_weak: &CavityParams,
    params_strong: &CavityParams,
    probe: f64,
) -> Result<(f64, f64)> {
    let same_except_g = CavityParams {
        g: params_weak.g,
        ..*params_strong
    } == *params_weak;
    if !same_except_g {
        return Err(Error::InvalidParameter {
            field: "params_strong",
            reason: "weak and strong parameter sets may differ only in g".into(),
        });
    }
    let (_, r_weak) = amplitudes(params_weak, probe)?;
    let (_, r_strong) = amplitudes(params_strong, probe)?;
    Ok((r_weak.norm_sqr(), r_strong.norm_sqr()))
}

/// Cavity-waveguide rate for symmetric coupling, `ω_c / 2Q`.
pub fn gamma_from_q(omega_c: f64, q: f64) -> Result<f64> {
    ensure_finite(omega_c, "omega_c")?;
    if q.is_nan() || q <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "q",
            reason: "quality factor must be positive".into(),
        });
    }
    Ok(omega_c / (2.0 * q))
}

/// Spectrum on `grid`. Detuning frames are measured from the emitter or the
/// cavity as tagged.
pub fn spectrum(params: &CavityParams, grid: &FrequencyGrid) -> Result<SpectralResponse> {
    let origin = match grid.frame() {
        Frame::Absolute => 0.0,
        Frame::DetuningFromEmitter => params.omega_e,
        Frame::DetuningFromCavity => params.omega_c,
    };
    SpectralResponse::from_fn(grid.clone(), |x| amplitudes(params, origin + x))
}
