//! Two-level emitter coupled to a continuous waveguide.
//!
//! Rates are real and non-negative. Non-guided loss enters only through the
//! complex detuning `Δ → Δ + iγ/2`.

use num_complex::Complex64;

use crate::error::{ensure_finite, Error, Result};
use crate::model::{
    Amplitude, EmitterWaveguideParams, Frame, FrequencyGrid, Probabilities, SpectralResponse,
    Validate,
};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Transmission and reflection amplitudes for a right-moving photon at
/// detuning `delta = ω − ω_e`.
///
/// With no guided coupling the photon propagates freely (`t = 1`, `r = 0`).
pub fn amplitudes(params: &EmitterWaveguideParams, delta: f64) -> Result<(Amplitude, Amplitude)> {
    params.validate()?;
    ensure_finite(delta, "delta")?;
    if params.is_trivially_transmitting() {
        return Ok((Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    let lossy = Complex64::new(delta, 0.5 * params.gamma_loss);
    let denom = lossy + 0.5 * I * params.guided_rate();
    let t = (lossy - 0.5 * I * (params.gamma_right - params.gamma_left)) / denom;
    let r = -I * (params.gamma_left * params.gamma_right).sqrt() / denom;
    Ok((t, r))
}

/// Amplitudes at absolute frequency `omega` (same frame as `omega_e`).
pub fn amplitudes_at(
    params: &EmitterWaveguideParams,
    omega: f64,
) -> Result<(Amplitude, Amplitude)> {
    amplitudes(params, omega - params.omega_e)
}

/// Single-photon S-matrix in the (R, L) port basis, built from the
/// input-output relation `S^{μν} = δ_{μν} − i√(Γ_μΓ_ν) / (Δ' + i(Γ_R+Γ_L)/2)`.
///
/// Index 0 is the right-moving port, 1 the left-moving port. For a
/// right-moving input, `t = S[0][0]` and `r = S[1][0]`. This is an
/// independent route to [`amplitudes`].
pub fn scattering_matrix(
    params: &EmitterWaveguideParams,
    delta: f64,
) -> Result<[[Amplitude; 2]; 2]> {
    params.validate()?;
    ensure_finite(delta, "delta")?;
    let rates = [params.gamma_right, params.gamma_left];
    let denom = Complex64::new(delta, 0.5 * params.gamma_loss) + 0.5 * I * params.guided_rate();
    let mut s = [[Complex64::new(0.0, 0.0); 2]; 2];
    for (mu, row) in s.iter_mut().enumerate() {
        for (nu, entry) in row.iter_mut().enumerate() {
            let kron = if mu == nu { 1.0 } else { 0.0 };
            let coupling = (rates[mu] * rates[nu]).sqrt();
            *entry = if coupling == 0.0 {
                Complex64::new(kron, 0.0)
            } else {
                kron - I * coupling / denom
            };
        }
    }
    Ok(s)
}

/// `(T, R, L)` with `L = 1 − T − R`.
pub fn probabilities(params: &EmitterWaveguideParams, delta: f64) -> Result<Probabilities> {
    let (t, r) = amplitudes(params, delta)?;
    Ok(Probabilities::from_amplitudes(t, r))
}

/// Fraction of emission into guided modes, `(Γ_R+Γ_L)/(Γ_R+Γ_L+γ)`.
pub fn beta_factor(params: &EmitterWaveguideParams) -> Result<f64> {
    params.validate()?;
    let total = params.guided_rate() + params.gamma_loss;
    if total <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "gamma_right",
            reason: "all decay rates are zero; beta is undefined".into(),
        });
    }
    Ok(params.guided_rate() / total)
}

/// Full width at half maximum of the reflection line, located by bisection
/// on the half-maximum crossing.
///
/// The reflection peak of this model always sits at `Δ = 0` and is even in
/// `Δ`, so the width is twice the positive crossing.
pub fn fwhm_reflection(params: &EmitterWaveguideParams) -> Result<f64> {
    params.validate()?;
    let peak = probabilities(params, 0.0)?.reflection;
    if peak <= 0.0 {
        return Err(Error::InvalidParameter {
            field: "gamma_left",
            reason: "reflection vanishes identically; no linewidth".into(),
        });
    }
    let half = 0.5 * peak;
    let excess = |d: f64| -> Result<f64> { Ok(probabilities(params, d)?.reflection - half) };

    // seed with the analytic half width, then widen until bracketed
    let seed = 0.5 * (params.guided_rate() + params.gamma_loss);
    let mut lo = 0.0;
    let mut hi = seed;
    while excess(hi)? > 0.0 {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if excess(mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    Ok(lo + hi)
}

/// Reflection probability at a fixed probe before and after the emitter is
/// shifted by `shift`. `probe` is the detuning from the unshifted resonance.
pub fn detuning_switch_contrast(
    params: &EmitterWaveguideParams,
    shift: f64,
    probe: f64,
) -> Result<(f64, f64)> {
    ensure_finite(shift, "shift")?;
    let before = probabilities(params, probe)?.reflection;
    let after = probabilities(params, probe - shift)?.reflection;
    Ok((before, after))
}

/// Reflection at `probe` for symmetric coupling (`Γ_R = Γ_L = gamma`) and for
/// chiral coupling (`Γ_R = 0`, `Γ_L = gamma`), both lossless.
pub fn chiral_switch_contrast(gamma: f64, probe: f64) -> Result<(f64, f64)> {
    let symmetric = probabilities(&EmitterWaveguideParams::symmetric(gamma), probe)?;
    let chiral = probabilities(&EmitterWaveguideParams::chiral_left(gamma), probe)?;
    Ok((symmetric.reflection, chiral.reflection))
}

/// A swept spectrum together with the per-point loss probability.
#[derive(Debug, Clone, PartialEq)]
pub struct DetuningSweepResult {
    pub response: SpectralResponse,
    pub loss_per_point: Vec<f64>,
}

/// Detuning of a grid sample from the emitter.
fn detuning_of(params: &EmitterWaveguideParams, frame: Frame, x: f64) -> Result<f64> {
    match frame {
        Frame::DetuningFromEmitter => Ok(x),
        Frame::Absolute => Ok(x - params.omega_e),
        Frame::DetuningFromCavity => Err(Error::InvalidParameter {
            field: "frame",
            reason: "continuum model has no cavity".into(),
        }),
    }
}

/// Spectrum on `grid`.
pub fn spectrum(params: &EmitterWaveguideParams, grid: &FrequencyGrid) -> Result<SpectralResponse> {
    let frame = grid.frame();
    SpectralResponse::from_fn(grid.clone(), |x| {
        amplitudes(params, detuning_of(params, frame, x)?)
    })
}

pub fn sweep(params: &EmitterWaveguideParams, grid: &FrequencyGrid) -> Result<DetuningSweepResult> {
    let response = spectrum(params, grid)?;
    let loss_per_point = response.loss();
    Ok(DetuningSweepResult {
        response,
        loss_per_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn lossy() -> EmitterWaveguideParams {
        EmitterWaveguideParams::symmetric(1.0).with_loss(2.0 / 9.0)
    }

    #[test]
    fn resonant_photon_is_reflected_with_pi_phase() {
        let (t, r) = amplitudes(&EmitterWaveguideParams::symmetric(1.0), 0.0).unwrap();
        assert_eq!(t, Complex64::new(0.0, 0.0));
        assert_eq!(r, Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn chiral_emitter_is_transparent() {
        for &d in &[-3.0, -0.2, 0.0, 0.7, 40.0] {
            let p = EmitterWaveguideParams {
                gamma_right: 1.0,
                gamma_left: 0.0,
                gamma_loss: 0.0,
                omega_e: 0.0,
            };
            let (t, r) = amplitudes(&p, d).unwrap();
            assert_eq!(r.norm(), 0.0);
            assert_abs_diff_eq!(t.norm(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn half_power_at_one_linewidth() {
        let p = probabilities(&EmitterWaveguideParams::symmetric(1.0), 1.0).unwrap();
        assert_abs_diff_eq!(p.transmission, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(p.reflection, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn lossy_resonance_values() {
        let p = probabilities(&lossy(), 0.0).unwrap();
        assert_abs_diff_eq!(p.transmission, 0.01, epsilon = 1e-14);
        assert_abs_diff_eq!(p.reflection, 0.81, epsilon = 1e-14);
        assert_abs_diff_eq!(p.loss, 0.18, epsilon = 1e-14);
    }

    #[test]
    fn far_detuned_photon_transmits() {
        let p = probabilities(&EmitterWaveguideParams::symmetric(1.0), 100.0).unwrap();
        assert!((1.0 - p.transmission) < 1e-3);
    }

    #[test]
    fn beta_values() {
        assert_abs_diff_eq!(beta_factor(&lossy()).unwrap(), 0.9, epsilon = 1e-15);
        assert_eq!(
            beta_factor(&EmitterWaveguideParams::symmetric(1.0)).unwrap(),
            1.0
        );
        let dark = EmitterWaveguideParams::symmetric(0.0).with_loss(1.0);
        assert_eq!(beta_factor(&dark).unwrap(), 0.0);
        assert!(beta_factor(&EmitterWaveguideParams::symmetric(0.0)).is_err());
    }

    #[test]
    fn fwhm_values() {
        let w = fwhm_reflection(&EmitterWaveguideParams::symmetric(1.0)).unwrap();
        assert_abs_diff_eq!(w, 2.0, epsilon = 1e-10);
        let w = fwhm_reflection(&lossy()).unwrap();
        assert_abs_diff_eq!(w, 20.0 / 9.0, epsilon = 1e-10);
        let w = fwhm_reflection(&EmitterWaveguideParams::symmetric(2.0)).unwrap();
        assert_abs_diff_eq!(w, 4.0, epsilon = 1e-10);
        assert!(fwhm_reflection(&EmitterWaveguideParams::chiral_left(1.0)).is_err());
    }

    #[test]
    fn detuning_switch_values() {
        let p = EmitterWaveguideParams::symmetric(1.0);
        let (before, after) = detuning_switch_contrast(&p, 2.0, 0.0).unwrap();
        assert_eq!(before, 1.0);
        assert_abs_diff_eq!(after, 0.2, epsilon = 1e-15);
        let (_, after) = detuning_switch_contrast(&p, 10.0, 0.0).unwrap();
        assert_abs_diff_eq!(after, 1.0 / 101.0, epsilon = 1e-15);
        assert_eq!(detuning_switch_contrast(&p, 0.0, 0.0).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn chiral_switch_values() {
        assert_eq!(chiral_switch_contrast(1.0, 0.0).unwrap(), (1.0, 0.0));
        let (s, c) = chiral_switch_contrast(1.0, 1.0).unwrap();
        assert_abs_diff_eq!(s, 0.5, epsilon = 1e-15);
        assert_eq!(c, 0.0);
        assert_eq!(chiral_switch_contrast(0.0, 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn no_coupling_is_free_propagation_even_on_resonance() {
        let (t, r) = amplitudes(&EmitterWaveguideParams::symmetric(0.0), 0.0).unwrap();
        assert_eq!((t, r), (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }

    #[test]
    fn rejects_non_finite() {
        let p = EmitterWaveguideParams::symmetric(1.0);
        assert_eq!(amplitudes(&p, f64::NAN), Err(Error::NonFinite("delta")));
        let bad = EmitterWaveguideParams::symmetric(f64::INFINITY);
        assert!(amplitudes(&bad, 0.0).is_err());
    }

    #[test]
    fn sweep_frames() {
        let p = EmitterWaveguideParams::symmetric(1.0).with_omega_e(5.0);
        let abs = FrequencyGrid::uniform(5.0, 1.0, 3, Frame::Absolute).unwrap();
        let res = sweep(&p, &abs).unwrap();
        assert_eq!(res.response.reflection()[1], 1.0);
        assert_eq!(res.response.grid().frame(), Frame::Absolute);
        let cav = FrequencyGrid::uniform(0.0, 1.0, 3, Frame::DetuningFromCavity).unwrap();
        assert!(sweep(&p, &cav).is_err());
    }

    proptest! {
        #[test]
        fn lossless_flux_is_conserved(gr in 0.0..5.0f64, gl in 0.0..5.0f64, d in -50.0..50.0f64) {
            let p = EmitterWaveguideParams { gamma_right: gr, gamma_left: gl, gamma_loss: 0.0, omega_e: 0.0 };
            let (t, r) = amplitudes(&p, d).unwrap();
            prop_assert!((t.norm_sqr() + r.norm_sqr() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn loss_strictly_reduces_flux(g in 0.01..5.0f64, loss in 0.01..2.0f64, d in -50.0..50.0f64) {
            let p = EmitterWaveguideParams::symmetric(g).with_loss(loss);
            let (t, r) = amplitudes(&p, d).unwrap();
            prop_assert!(t.norm_sqr() + r.norm_sqr() < 1.0);
        }

        #[test]
        fn reflection_is_even(g in 0.01..5.0f64, loss in 0.0..2.0f64, d in 0.0..50.0f64) {
            let p = EmitterWaveguideParams::symmetric(g).with_loss(loss);
            let plus = probabilities(&p, d).unwrap().reflection;
            let minus = probabilities(&p, -d).unwrap().reflection;
            prop_assert_eq!(plus, minus);
        }

        #[test]
        fn reflection_matches_lossy_lorentzian(g in 0.01..5.0f64, loss in 0.0..2.0f64, d in -50.0..50.0f64) {
            let p = EmitterWaveguideParams::symmetric(g).with_loss(loss);
            let r = probabilities(&p, d).unwrap().reflection;
            let width = g + 0.5 * loss;
            let lorentz = g * g / (d * d + width * width);
            prop_assert!((r - lorentz).abs() < 1e-14);
        }

        #[test]
        fn scale_covariance(gr in 0.0..5.0f64, gl in 0.01..5.0f64, loss in 0.0..2.0f64,
                            d in -20.0..20.0f64, alpha in 0.01..100.0f64) {
            let p = EmitterWaveguideParams { gamma_right: gr, gamma_left: gl, gamma_loss: loss, omega_e: 0.0 };
            let q = EmitterWaveguideParams { gamma_right: alpha * gr, gamma_left: alpha * gl, gamma_loss: alpha * loss, omega_e: 0.0 };
            let (t1, r1) = amplitudes(&p, d).unwrap();
            let (t2, r2) = amplitudes(&q, alpha * d).unwrap();
            prop_assert!((t1 - t2).norm() < 1e-13);
            prop_assert!((r1 - r2).norm() < 1e-13);
        }

        #[test]
        fn s_matrix_route_agrees(gr in 0.0..5.0f64, gl in 0.0..5.0f64, loss in 0.0..2.0f64, d in -20.0..20.0f64) {
            prop_assume!(gr + gl > 0.0);
            let p = EmitterWaveguideParams { gamma_right: gr, gamma_left: gl, gamma_loss: loss, omega_e: 0.0 };
            let (t, r) = amplitudes(&p, d).unwrap();
            let s = scattering_matrix(&p, d).unwrap();
            prop_assert!((s[0][0] - t).norm() < 1e-13);
            prop_assert!((s[1][0] - r).norm() < 1e-13);
            // reciprocity
            prop_assert!((s[0][1] - s[1][0]).norm() < 1e-15);
        }

        #[test]
        fn lossless_s_matrix_is_unitary(gr in 0.0..5.0f64, gl in 0.0..5.0f64, d in -20.0..20.0f64) {
            prop_assume!(gr + gl > 0.0);
            let p = EmitterWaveguideParams { gamma_right: gr, gamma_left: gl, gamma_loss: 0.0, omega_e: 0.0 };
            let s = scattering_matrix(&p, d).unwrap();
            for a in 0..2 {
                for b in 0..2 {
                    let dot: Complex64 = (0..2).map(|m| s[m][a].conj() * s[m][b]).sum();
                    let want = if a == b { 1.0 } else { 0.0 };
                    prop_assert!((dot - want).norm() < 1e-12);
                }
            }
        }
    }
}
