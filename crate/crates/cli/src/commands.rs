use std::f64::consts::PI;
use std::path::PathBuf;

use wqed_core::cascade::{compose, SiteScatterer};
use wqed_core::oracle::{
    finite_chain_solve, propagate_packet, EmitterAttachment, FiniteChainProblem, PropagationConfig,
    SpatialPacket,
};
use wqed_core::packet::{gaussian_packet, monochromatic_report, switch_report};
use wqed_core::search::{maximize, Bound, SearchOptions};
use wqed_core::{crw, CrwParams, Error, SwitchReport};

use crate::csv::{sha256_hex, Cell, Table};
use crate::error::{CliError, CliResult};
use crate::scenario::{default_wave_numbers, set_path, Model, Objective, OracleSpec, Scenario};

/// Share of grid points allowed to hit a fully blocking cascade site before
/// the spectrum command reports a quality failure.
pub const MAX_BLOCKED_FRACTION: f64 = 0.1;

/// What a command produced: the main table, any side files, and an optional
/// quality failure to report after the output has been written.
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub side_files: Vec<(PathBuf, String)>,
    pub warning: Option<CliError>,
}

impl Outcome {
    fn table(table: Table) -> Self {
        Self {
            table,
            side_files: Vec::new(),
            warning: None,
        }
    }
}

pub fn scenario_hash(text: &str) -> String {
    sha256_hex(text.as_bytes())
}

pub fn spectrum(scn: &Scenario, hash: &str) -> CliResult<Outcome> {
    let grid = scn.grid()?;
    let origin = scn.on.reference(grid.frame())?;
    let (response, blocked) = scn.on.response(&grid, origin)?;
    let mut table = Table::new(
        "spectrum",
        hash,
        &[
            "omega_or_delta",
            "frame",
            "t_re",
            "t_im",
            "r_re",
            "r_im",
            "T",
            "R",
            "loss",
        ],
    );
    let frame = grid.frame().as_str();
    for (i, p) in response.probabilities().enumerate() {
        let (t, r) = (response.t()[i], response.r()[i]);
        table.push(vec![
            grid.points()[i].into(),
            frame.into(),
            t.re.into(),
            t.im.into(),
            r.re.into(),
            r.im.into(),
            p.transmission.into(),
            p.reflection.into(),
            p.loss.into(),
        ]);
    }
    let mut out = Outcome::table(table);
    if blocked > 0 {
        out.table.note("blocked-points", blocked.to_string());
    }
    if blocked as f64 > MAX_BLOCKED_FRACTION * grid.len() as f64 {
        out.warning = Some(CliError::Quality(format!(
            "{blocked} of {} grid points hit a fully reflecting site",
            grid.len()
        )));
    }
    Ok(out)
}

/// Switch figures of merit with `on` as the on state.
pub fn switch_metrics(scn: &Scenario) -> CliResult<SwitchReport> {
    let packet = scn
        .packet
        .as_ref()
        .ok_or_else(|| CliError::input("invalid scenario: metrics need a [packet] table"))?;
    let frame = scn.frame();
    // both states are evaluated at the same absolute frequencies, fixed by
    // the on state's reference
    let origin = scn.on.reference(frame)?;
    let off = scn.off.as_ref().unwrap_or(&scn.on);
    if packet.sigma == 0.0 {
        let probe = origin + packet.center;
        let (on_amps, _) = scn.on.amplitudes_at(probe)?;
        let (off_amps, _) = off.amplitudes_at(probe)?;
        return Ok(monochromatic_report(on_amps, off_amps));
    }
    let grid = scn.grid()?;
    let (on, _) = scn.on.response(&grid, origin)?;
    let (off, _) = off.response(&grid, origin)?;
    let packet = gaussian_packet(packet.center, packet.sigma, &grid)?;
    Ok(switch_report(&on, &off, &packet)?)
}

pub fn metrics(scn: &Scenario, hash: &str) -> CliResult<Outcome> {
    let rep = switch_metrics(scn)?;
    let mut table = Table::new(
        "metrics",
        hash,
        &[
            "e_t",
            "e_r",
            "f_t",
            "f_r",
            "p_t",
            "p_r",
            "contrast",
            "extinction_db",
        ],
    );
    table.push(
        [
            rep.e_t,
            rep.e_r,
            rep.f_t,
            rep.f_r,
            rep.p_t,
            rep.p_r,
            rep.contrast,
            rep.extinction_db,
        ]
        .into_iter()
        .map(Cell::from)
        .collect(),
    );
    Ok(Outcome::table(table))
}

fn objective_value(rep: &SwitchReport, objective: Objective) -> f64 {
    match objective {
        Objective::Contrast => rep.contrast,
        Objective::ReflectionEfficiency => rep.e_r,
        Objective::TransmissionFidelity => rep.f_t,
    }
}

pub fn optimize(scn: &Scenario, hash: &str) -> CliResult<Outcome> {
    let spec = scn
        .optimize
        .as_ref()
        .ok_or_else(|| CliError::input("invalid scenario: optimize needs an [optimize] table"))?;
    let bounds: Vec<Bound> = spec
        .free
        .iter()
        .map(|f| Bound::new(f.path.clone(), f.lo, f.hi))
        .collect();
    let mut options = SearchOptions::default();
    if let Some(n) = spec.points_per_axis {
        options.points_per_axis = n;
    }
    let mut failure = None;
    let result = maximize(&bounds, options, |x| {
        let mut raw = scn.raw.clone();
        for (f, &v) in spec.free.iter().zip(x) {
            if let Err(e) = set_path(&mut raw, &f.path, v) {
                failure = Some(e);
                return Err(Error::NonFinite("objective"));
            }
        }
        let trial = Scenario::from_table(raw)
            .and_then(|s| switch_metrics(&s))
            .map(|rep| objective_value(&rep, spec.objective));
        trial.map_err(|e| {
            failure = Some(e);
            Error::NonFinite("objective")
        })
    });
    let result = match (result, failure) {
        (Ok(r), _) => r,
        (Err(_), Some(e)) => return Err(e),
        (Err(e), None) => return Err(e.into()),
    };

    let mut header = vec!["stage".to_string()];
    header.extend(spec.free.iter().map(|f| f.path.clone()));
    header.push(spec.objective.as_str().to_string());
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut table = Table::new("optimize", hash, &header);
    table.note("objective", spec.objective.as_str());
    let best: Vec<String> = spec
        .free
        .iter()
        .zip(&result.best)
        .map(|(f, v)| format!("{}={}", f.path, crate::csv::fmt_f64(*v)))
        .collect();
    table.note("best", best.join(" "));
    table.note("best-value", crate::csv::fmt_f64(result.value));
    for e in &result.trace {
        let mut row = vec![Cell::from(e.stage.as_str())];
        row.extend(e.params.iter().map(|&v| Cell::from(v)));
        row.push(e.value.into());
        table.push(row);
    }
    let mut row = vec![Cell::from("best")];
    row.extend(result.best.iter().map(|&v| Cell::from(v)));
    row.push(result.value.into());
    table.push(row);
    Ok(Outcome::table(table))
}

fn crw_model(scn: &Scenario) -> CliResult<CrwParams> {
    match &scn.on {
        Model::Crw(p) => Ok(*p),
        _ => Err(CliError::input(
            "invalid scenario: oracle runs need model = \"crw\"",
        )),
    }
}

pub fn oracle(scn: &Scenario, hash: &str) -> CliResult<Outcome> {
    let spec = scn
        .oracle
        .as_ref()
        .ok_or_else(|| CliError::input("invalid scenario: oracle needs an [oracle] table"))?;
    let params = crw_model(scn)?;
    let mut table = Table::new(
        "oracle",
        hash,
        &[
            "checkpoint",
            "quantity",
            "closed_form",
            "oracle",
            "abs_diff",
            "tolerance",
        ],
    );
    let mut side_files = Vec::new();
    let mut worst: Option<(String, f64, f64)> = None;
    let mut record = |table: &mut Table,
                      checkpoint: String,
                      quantity: &str,
                      closed: f64,
                      brute: f64,
                      tol: f64| {
        let diff = (closed - brute).abs();
        if diff > tol && worst.as_ref().is_none_or(|w| diff > w.1) {
            worst = Some((format!("{checkpoint} {quantity}"), diff, tol));
        }
        table.push(vec![
            checkpoint.into(),
            quantity.into(),
            closed.into(),
            brute.into(),
            diff.into(),
            tol.into(),
        ]);
    };

    match spec {
        OracleSpec::Chain {
            n_sites,
            k_values,
            k_count,
            emitters,
            spacing,
            tolerance,
        } => {
            let ks = k_values
                .clone()
                .unwrap_or_else(|| default_wave_numbers(*k_count));
            if ks.is_empty() || *emitters == 0 {
                return Err(CliError::input(
                    "invalid scenario: chain oracle needs at least one k value and one emitter",
                ));
            }
            table.note("oracle", "finite-chain");
            for &k in &ks {
                let problem = FiniteChainProblem::array(&params, *emitters, *spacing, *n_sites, k);
                let (t, r) = finite_chain_solve(&problem)?;
                let (t0, r0) = crw::amplitudes(&params, k)?;
                let (t_ref, r_ref) = if *emitters == 1 {
                    (t0, r0)
                } else {
                    let sites = vec![SiteScatterer { t: t0, r: r0 }; *emitters];
                    let gaps = vec![*spacing as f64; emitters - 1];
                    compose(&sites, &gaps, k)?.0
                };
                let cp = format!("k={}", crate::csv::fmt_f64(k));
                for (q, a, b) in [
                    ("t_re", t_ref.re, t.re),
                    ("t_im", t_ref.im, t.im),
                    ("r_re", r_ref.re, r.re),
                    ("r_im", r_ref.im, r.im),
                ] {
                    record(&mut table, cp.clone(), q, a, b, *tolerance);
                }
            }
        }
        OracleSpec::TimeDomain {
            lattice_length,
            emitter_site,
            packet_center,
            packet_width,
            carrier,
            detuning,
            t_max,
            dt,
            tolerance,
            trajectory,
            sample_every,
        } => {
            let k0 = match (carrier, detuning) {
                (Some(k), None) => *k,
                (None, Some(d)) => crw::inverse_dispersion(&params, params.omega_e + d)?,
                (None, None) => PI / 2.0,
                (Some(_), Some(_)) => {
                    return Err(CliError::input(
                        "invalid scenario: give either oracle.carrier or oracle.detuning",
                    ))
                }
            };
            let config = PropagationConfig {
                lattice_length: *lattice_length,
                omega_c: params.omega_c,
                xi: params.xi,
                emitters: vec![EmitterAttachment {
                    site: emitter_site.unwrap_or(lattice_length / 2),
                    g: params.g,
                    omega_e: params.omega_e,
                    gamma_loss: params.gamma_loss,
                }],
                packet: SpatialPacket {
                    center: *packet_center,
                    width: *packet_width,
                    carrier: k0,
                },
                dt: *dt,
                t_max: *t_max,
                sample_every: trajectory.as_ref().map(|_| sample_every.unwrap_or(100)),
            };
            let run = propagate_packet(&config)?;
            let (t, r) = crw::amplitudes(&params, k0)?;
            table.note("oracle", "time-domain");
            table.note("carrier", crate::csv::fmt_f64(k0));
            table.note("final-time", crate::csv::fmt_f64(run.final_state.time));
            let cp = format!("k0={}", crate::csv::fmt_f64(k0));
            record(
                &mut table,
                cp.clone(),
                "R",
                r.norm_sqr(),
                run.reflection,
                *tolerance,
            );
            record(
                &mut table,
                cp.clone(),
                "T",
                t.norm_sqr(),
                run.transmission,
                *tolerance,
            );
            record(&mut table, cp, "norm_drift", 0.0, run.norm_drift, 1e-8);
            if let Some(path) = trajectory {
                let mut traj =
                    Table::new("oracle-trajectory", hash, &["time", "site", "population"]);
                for s in &run.trajectory {
                    traj.push(vec![
                        s.time.into(),
                        s.site.to_string().into(),
                        s.population.into(),
                    ]);
                }
                side_files.push((path.clone(), traj.render()));
            }
        }
    }
    let warning = worst.map(|(at, diff, tol)| {
        CliError::Quality(format!(
            "oracle disagreement at {at}: {diff:e} exceeds {tol:e}"
        ))
    });
    Ok(Outcome {
        table,
        side_files,
        warning,
    })
}

pub fn figure(id: &str) -> CliResult<Outcome> {
    Ok(Outcome::table(crate::figures::figure(id)?))
}
