//! Figure datasets, regenerated from the closed forms on every call.
//!
//! | id                | columns |
//! |-------------------|---------|
//! | `lorentzian`      | `delta_over_gamma,T,R,loss` |
//! | `lorentzian-loss` | `delta_over_gamma,T,R,loss` (γ = 2Γ/9) |
//! | `crw-band`        | `k,omega_minus_omega_c_over_xi` |
//! | `crw-scatter`     | `delta_over_g,T,R,loss` (ξ = 2g; edge rows are the T = 0, R = 1 limits) |
//! | `detuning-switch` | `delta_over_gamma,R_initial,R_shift_2gamma,R_shift_10gamma` |
//! | `chiral-switch`   | `delta_over_gamma,T_symmetric,R_symmetric,T_chiral,R_chiral` |
//! | `rabi-switch`     | `omega_minus_omega_c_over_gamma,T_weak,R_weak,T_strong,R_strong` (g = 0 and g = 5Γ) |
//!
//! All rates are in units of Γ = 1 (or g = 1, ξ = 1 for the lattice
//! figures).

use std::f64::consts::PI;

use wqed_core::{
    cavity, continuum, crw, CavityParams, CrwParams, EmitterWaveguideParams, Frame, FrequencyGrid,
    Probabilities,
};

use crate::csv::{sha256_hex, Table};
use crate::error::{CliError, CliResult};

pub const FIGURE_IDS: &[&str] = &[
    "lorentzian",
    "lorentzian-loss",
    "crw-band",
    "crw-scatter",
    "detuning-switch",
    "chiral-switch",
    "rabi-switch",
];

fn table(id: &str, params: &str, header: &[&str]) -> Table {
    let hash = sha256_hex(format!("figure {id}\n{params}\n").as_bytes());
    let mut t = Table::new("figure", &hash, header);
    t.note("figure", id);
    t.note("params", params);
    t
}

fn continuum_curve(id: &str, params: &str, p: EmitterWaveguideParams) -> CliResult<Table> {
    let grid = FrequencyGrid::uniform(0.0, 10.0, 1001, Frame::DetuningFromEmitter)?;
    let response = continuum::spectrum(&p, &grid)?;
    let mut t = table(id, params, &["delta_over_gamma", "T", "R", "loss"]);
    for (&x, pr) in grid.points().iter().zip(response.probabilities()) {
        t.push(vec![
            x.into(),
            pr.transmission.into(),
            pr.reflection.into(),
            pr.loss.into(),
        ]);
    }
    Ok(t)
}

fn crw_band() -> CliResult<Table> {
    let p = CrwParams::resonant(0.0, 1.0, 0.0);
    let mut t = table(
        "crw-band",
        "omega_c=0 xi=1 points=201",
        &["k", "omega_minus_omega_c_over_xi"],
    );
    for i in 0..201 {
        let k = if i == 200 {
            PI
        } else {
            -PI + 2.0 * PI * i as f64 / 200.0
        };
        t.push(vec![k.into(), crw::dispersion(&p, k).into()]);
    }
    Ok(t)
}

fn crw_scatter() -> CliResult<Table> {
    let g = 1.0;
    let p = CrwParams::resonant(0.0, 2.0 * g, g);
    let mut t = table(
        "crw-scatter",
        "omega_c=omega_e=0 g=1 xi=2 points=801",
        &["delta_over_g", "T", "R", "loss"],
    );
    let n = 801;
    for i in 0..n {
        let x = if i == n - 1 {
            4.0
        } else {
            -4.0 + 8.0 * i as f64 / (n - 1) as f64
        };
        let pr = if i == 0 || i == n - 1 {
            // band edge: propagation ceases, emitted as the limiting values
            Probabilities {
                transmission: 0.0,
                reflection: 1.0,
                loss: 0.0,
            }
        } else {
            let (tr, rf) = crw::amplitudes(&p, crw::inverse_dispersion(&p, x * g)?)?;
            Probabilities::from_amplitudes(tr, rf)
        };
        t.push(vec![
            x.into(),
            pr.transmission.into(),
            pr.reflection.into(),
            pr.loss.into(),
        ]);
    }
    Ok(t)
}

fn detuning_switch() -> CliResult<Table> {
    let base = EmitterWaveguideParams::symmetric(1.0);
    let mut t = table(
        "detuning-switch",
        "gamma_right=gamma_left=1 shifts=0,2,10 points=1001",
        &[
            "delta_over_gamma",
            "R_initial",
            "R_shift_2gamma",
            "R_shift_10gamma",
        ],
    );
    let grid = FrequencyGrid::uniform(0.0, 10.0, 1001, Frame::Absolute)?;
    let curves: Vec<Vec<f64>> = [0.0, 2.0, 10.0]
        .iter()
        .map(|&shift| Ok(continuum::spectrum(&base.with_omega_e(shift), &grid)?.reflection()))
        .collect::<CliResult<_>>()?;
    for (i, &x) in grid.points().iter().enumerate() {
        t.push(vec![
            x.into(),
            curves[0][i].into(),
            curves[1][i].into(),
            curves[2][i].into(),
        ]);
    }
    Ok(t)
}

fn chiral_switch() -> CliResult<Table> {
    let grid = FrequencyGrid::uniform(0.0, 10.0, 1001, Frame::DetuningFromEmitter)?;
    let sym = continuum::spectrum(&EmitterWaveguideParams::symmetric(1.0), &grid)?;
    let chiral = continuum::spectrum(&EmitterWaveguideParams::chiral_left(1.0), &grid)?;
    let mut t = table(
        "chiral-switch",
        "symmetric gamma_right=gamma_left=1; chiral gamma_right=0 gamma_left=1; points=1001",
        &[
            "delta_over_gamma",
            "T_symmetric",
            "R_symmetric",
            "T_chiral",
            "R_chiral",
        ],
    );
    let (ts, rs, tc, rc) = (
        sym.transmission(),
        sym.reflection(),
        chiral.transmission(),
        chiral.reflection(),
    );
    for (i, &x) in grid.points().iter().enumerate() {
        t.push(vec![
            x.into(),
            ts[i].into(),
            rs[i].into(),
            tc[i].into(),
            rc[i].into(),
        ]);
    }
    Ok(t)
}

fn rabi_switch() -> CliResult<Table> {
    let strong = CavityParams::resonant(0.0, 5.0, 1.0);
    let weak = strong.with_g(0.0);
    let grid = FrequencyGrid::uniform(0.0, 10.0, 4001, Frame::DetuningFromCavity)?;
    let w = cavity::spectrum(&weak, &grid)?;
    let s = cavity::spectrum(&strong, &grid)?;
    let mut t = table(
        "rabi-switch",
        "omega_c=omega_e=0 gamma_right=gamma_left=1 kappa=gamma=0 g_weak=0 g_strong=5 points=4001",
        &[
            "omega_minus_omega_c_over_gamma",
            "T_weak",
            "R_weak",
            "T_strong",
            "R_strong",
        ],
    );
    let (tw, rw, ts, rs) = (
        w.transmission(),
        w.reflection(),
        s.transmission(),
        s.reflection(),
    );
    for (i, &x) in grid.points().iter().enumerate() {
        t.push(vec![
            x.into(),
            tw[i].into(),
            rw[i].into(),
            ts[i].into(),
            rs[i].into(),
        ]);
    }
    Ok(t)
}

pub fn figure(id: &str) -> CliResult<Table> {
    match id {
        "lorentzian" => continuum_curve(
            id,
            "gamma_right=gamma_left=1 gamma_loss=0 points=1001",
            EmitterWaveguideParams::symmetric(1.0),
        ),
        "lorentzian-loss" => continuum_curve(
            id,
            "gamma_right=gamma_left=1 gamma_loss=2/9 points=1001",
            EmitterWaveguideParams::symmetric(1.0).with_loss(2.0 / 9.0),
        ),
        "crw-band" => crw_band(),
        "crw-scatter" => crw_scatter(),
        "detuning-switch" => detuning_switch(),
        "chiral-switch" => chiral_switch(),
        "rabi-switch" => rabi_switch(),
        other => Err(CliError::input(format!(
            "unknown figure `{other}`; expected one of {}",
            FIGURE_IDS.join(", ")
        ))),
    }
}
