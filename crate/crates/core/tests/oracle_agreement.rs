use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use wqed_core::cascade::{
    cascade_amplitudes, compose, CascadeLayout, Dispersion, Site, SiteScatterer,
};
use wqed_core::oracle::{finite_chain_solve, FiniteChainProblem};
use wqed_core::{crw, CrwParams, Frame, FrequencyGrid};

fn in_band_wave_numbers(count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| PI * (0.05 + 0.9 * i as f64 / (count - 1) as f64))
        .collect()
}

fn detuned(g: f64, offset: f64) -> CrwParams {
    CrwParams {
        omega_e: 0.3 + offset,
        ..CrwParams::resonant(0.3, 2.0 * g, g)
    }
}

#[test]
fn chain_matches_closed_form() {
    for params in [detuned(0.5, 0.0), detuned(0.5, 0.4), detuned(0.2, -1.1)] {
        for k in in_band_wave_numbers(21) {
            let (t_ref, r_ref) = crw::amplitudes(&params, k).unwrap();
            let (t, r) = finite_chain_solve(&FiniteChainProblem::single(&params, 401, k)).unwrap();
            assert!((t - t_ref).norm() < 1e-8, "t at k = {k}: {t} vs {t_ref}");
            assert!((r - r_ref).norm() < 1e-8, "r at k = {k}: {r} vs {r_ref}");
        }
    }
}

#[test]
fn chain_matches_lossy_closed_form() {
    let params = CrwParams {
        gamma_loss: 0.05,
        ..detuned(0.5, 0.1)
    };
    for k in in_band_wave_numbers(9) {
        let (t_ref, r_ref) = crw::amplitudes(&params, k).unwrap();
        let (t, r) = finite_chain_solve(&FiniteChainProblem::single(&params, 401, k)).unwrap();
        assert!((t - t_ref).norm() < 1e-8);
        assert!((r - r_ref).norm() < 1e-8);
    }
}

// The boundary rows are exact, so the chain length only enters through
// rounding. The ladder differences therefore sit at machine precision
// instead of decaying.
#[test]
fn chain_length_ladder() {
    let params = detuned(0.5, 0.2);
    for k in [0.4, FRAC_PI_2, 2.3] {
        let ladder: Vec<Complex64> = [101, 201, 401, 801]
            .iter()
            .map(|&n| {
                finite_chain_solve(&FiniteChainProblem::single(&params, n, k))
                    .unwrap()
                    .0
            })
            .collect();
        for pair in ladder.windows(2) {
            assert!((pair[0] - pair[1]).norm() < 1e-12);
        }
    }
}

#[test]
fn decoupled_chain_is_transparent() {
    let params = CrwParams::resonant(0.0, 1.0, 0.0);
    for k in in_band_wave_numbers(7) {
        let (t, r) = finite_chain_solve(&FiniteChainProblem::single(&params, 201, k)).unwrap();
        assert!((t.norm() - 1.0).abs() < 1e-12);
        assert!(r.norm() < 1e-12);
    }
}

#[test]
fn resonant_emitter_on_chain() {
    let params = CrwParams::resonant(0.0, 1.0, 0.5);
    let (t, r) = finite_chain_solve(&FiniteChainProblem::single(&params, 401, FRAC_PI_2)).unwrap();
    assert!(t.norm() < 1e-10);
    assert!((r + 1.0).norm() < 1e-10);
}

fn cascade_at(params: &CrwParams, count: usize, spacing: usize, k: f64) -> (Complex64, Complex64) {
    let (t, r) = crw::amplitudes(params, k).unwrap();
    let sites = vec![SiteScatterer { t, r }; count];
    let gaps = vec![spacing as f64; count - 1];
    let (amps, blocked) = compose(&sites, &gaps, k).unwrap();
    assert!(!blocked);
    amps
}

#[test]
fn chain_matches_cascade() {
    let params = detuned(0.5, 0.15);
    for count in 1..=4 {
        for spacing in [1, 3, 10] {
            for k in in_band_wave_numbers(11) {
                let (t_ref, r_ref) = cascade_at(&params, count, spacing, k);
                let problem = FiniteChainProblem::array(&params, count, spacing, 401, k);
                let (t, r) = finite_chain_solve(&problem).unwrap();
                assert!(
                    (t - t_ref).norm() < 1e-8 && (r - r_ref).norm() < 1e-8,
                    "N = {count}, d = {spacing}, k = {k}: ({t}, {r}) vs ({t_ref}, {r_ref})"
                );
            }
        }
    }
}

#[test]
fn two_resonant_emitters_reflect_fully() {
    let params = CrwParams::resonant(0.0, 1.0, 0.5);
    let problem = FiniteChainProblem::array(&params, 2, 10, 401, FRAC_PI_2);
    let (t, r) = finite_chain_solve(&problem).unwrap();
    assert!(t.norm() < 1e-10);
    assert!((r.norm() - 1.0).abs() < 1e-10);

    // a detuned carrier exercises the multiple reflections
    let k = 1.4;
    let (t, r) = finite_chain_solve(&FiniteChainProblem::array(&params, 2, 10, 401, k)).unwrap();
    let (t_ref, r_ref) = cascade_at(&params, 2, 10, k);
    assert!((t - t_ref).norm() < 1e-8);
    assert!((r - r_ref).norm() < 1e-8);
    // values from a dense solve that keeps the emitter amplitudes as unknowns
    let expected_t = Complex64::new(-0.584_877_783_880_162_2, 0.792_837_882_744_178_9);
    let expected_r = Complex64::new(0.137_808_066_902_318_67, 0.101_661_233_052_666_17);
    assert!((t - expected_t).norm() < 1e-10, "t = {t:?}");
    assert!((r - expected_r).norm() < 1e-10, "r = {r:?}");
}

#[test]
fn lattice_cascade_sweep_matches_chain() {
    let params = CrwParams::resonant(0.0, 1.0, 0.5);
    let layout = CascadeLayout::uniform(Site::Crw(params), 3, 4.0).unwrap();
    let grid = FrequencyGrid::uniform(0.0, 1.8, 37, Frame::DetuningFromCavity).unwrap();
    let sweep = cascade_amplitudes(&layout, &grid, &Dispersion::lattice(&params)).unwrap();
    for (i, &delta) in grid.points().iter().enumerate() {
        let k = crw::inverse_dispersion(&params, delta).unwrap();
        let (t, r) = finite_chain_solve(&FiniteChainProblem::array(&params, 3, 4, 401, k)).unwrap();
        if sweep.response.t()[i].norm() == 0.0 {
            // a site sits exactly on resonance
            assert!(t.norm() < 1e-8);
            continue;
        }
        assert!((t - sweep.response.t()[i]).norm() < 1e-8);
        assert!((r - sweep.response.r()[i]).norm() < 1e-8);
    }
}
