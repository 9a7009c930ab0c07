//! Scenario files.
//!
//! A scenario is a TOML document:
//!
//! ```toml
//! schema = 1
//! model = "continuum"        # continuum | cavity | crw | cascade
//!
//! [params]                   # fields of the model's parameter type
//! gamma_right = 1.0
//! gamma_left = 1.0
//!
//! [sweep]                    # uniform grid, or `values = [...]`
//! center = 0.0
//! half_width = 10.0
//! points = 1001
//! frame = "detuning-from-emitter"
//!
//! [packet]                   # sigma = 0 means a monochromatic probe
//! center = 0.0
//! sigma = 0.01
//!
//! [switch]                   # overrides applied to [params] for the off state
//! omega_e = 10.0
//! ```
//!
//! Cascades replace `[params]` with a `[cascade]` table holding either
//! `sites = [{ backend = "continuum", ... }, ...]` with `separations`, or a
//! single `site` repeated `count` times at spacing `separation`, plus an
//! optional `[cascade.dispersion]`.

use std::f64::consts::PI;
use std::path::PathBuf;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Deserialize;
use toml::{Table, Value};
use wqed_core::cascade::{compose, CascadeLayout, Dispersion, Site};
use wqed_core::{
    cavity, continuum, crw, Amplitude, CavityParams, CrwParams, EmitterWaveguideParams, Frame,
    FrequencyGrid, SpectralResponse, Validate,
};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: i64 = 1;

const TOP_LEVEL: &[&str] = &[
    "schema", "model", "params", "cascade", "sweep", "packet", "switch", "optimize", "oracle",
    "output",
];
const CONTINUUM_FIELDS: &[&str] = &["gamma_right", "gamma_left", "gamma_loss", "omega_e"];
const CAVITY_FIELDS: &[&str] = &[
    "g",
    "kappa",
    "gamma_loss",
    "omega_c",
    "omega_e",
    "gamma_right",
    "gamma_left",
    "quality_factor",
];
const CRW_FIELDS: &[&str] = &["omega_c", "xi", "g", "omega_e", "gamma_loss"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Continuum,
    Cavity,
    Crw,
    Cascade,
}

impl ModelKind {
    fn parse(s: &str) -> CliResult<Self> {
        match s {
            "continuum" => Ok(ModelKind::Continuum),
            "cavity" => Ok(ModelKind::Cavity),
            "crw" => Ok(ModelKind::Crw),
            "cascade" => Ok(ModelKind::Cascade),
            other => Err(CliError::input(format!(
                "invalid scenario: model `{other}` is not one of continuum, cavity, crw, cascade"
            ))),
        }
    }

    pub fn default_frame(self) -> Frame {
        match self {
            ModelKind::Continuum | ModelKind::Cascade => Frame::DetuningFromEmitter,
            ModelKind::Cavity | ModelKind::Crw => Frame::DetuningFromCavity,
        }
    }
}

/// A fully validated scattering model.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Continuum(EmitterWaveguideParams),
    Cavity(CavityParams),
    Crw(CrwParams),
    Cascade {
        layout: CascadeLayout,
        dispersion: Dispersion,
    },
}

impl Model {
    /// Frequency that `frame` measures detunings from.
    pub fn reference(&self, frame: Frame) -> CliResult<f64> {
        let no_cavity =
            || CliError::input("invalid scenario: frame detuning-from-cavity needs a cavity model");
        Ok(match (self, frame) {
            (_, Frame::Absolute) => 0.0,
            (Model::Continuum(p), Frame::DetuningFromEmitter) => p.omega_e,
            (Model::Continuum(_), Frame::DetuningFromCavity) => return Err(no_cavity()),
            (Model::Cavity(p), Frame::DetuningFromEmitter) => p.omega_e,
            (Model::Cavity(p), Frame::DetuningFromCavity) => p.omega_c,
            (Model::Crw(p), Frame::DetuningFromEmitter) => p.omega_e,
            (Model::Crw(p), Frame::DetuningFromCavity) => p.omega_c,
            (Model::Cascade { layout, .. }, f) => match (&layout.sites[0], f) {
                (Site::Continuum(p), Frame::DetuningFromEmitter) => p.omega_e,
                (Site::Continuum(_), _) => return Err(no_cavity()),
                (Site::Cavity(p), Frame::DetuningFromEmitter) => p.omega_e,
                (Site::Cavity(p), _) => p.omega_c,
                (Site::Crw(p), Frame::DetuningFromEmitter) => p.omega_e,
                (Site::Crw(p), _) => p.omega_c,
            },
        })
    }

    /// `(t, r)` at absolute frequency `omega`, and whether a cascade site
    /// blocked transmission there.
    pub fn amplitudes_at(&self, omega: f64) -> CliResult<((Amplitude, Amplitude), bool)> {
        let amps = match self {
            Model::Continuum(p) => continuum::amplitudes_at(p, omega)?,
            Model::Cavity(p) => cavity::amplitudes(p, omega)?,
            Model::Crw(p) => crw::amplitudes(p, crw::clamped_wave_number(p, omega)?)?,
            Model::Cascade { layout, dispersion } => {
                let k = dispersion.wave_number(omega)?;
                let sites = layout
                    .sites
                    .iter()
                    .map(|s| s.scatterer(omega, k))
                    .collect::<Result<Vec<_>, _>>()?;
                return Ok(compose(&sites, &layout.separations, k)?);
            }
        };
        Ok((amps, false))
    }

    /// Response on `grid`, whose abscissae are measured in its frame
    /// relative to `origin`. Points are evaluated in parallel; the result is
    /// independent of the thread count.
    pub fn response(
        &self,
        grid: &FrequencyGrid,
        origin: f64,
    ) -> CliResult<(SpectralResponse, usize)> {
        let values: Vec<((Amplitude, Amplitude), bool)> = grid
            .points()
            .par_iter()
            .map(|&x| self.amplitudes_at(origin + x))
            .collect::<CliResult<_>>()?;
        let blocked = values.iter().filter(|(_, b)| *b).count();
        let (t, r): (Vec<Complex64>, Vec<Complex64>) = values.into_iter().map(|(a, _)| a).unzip();
        Ok((SpectralResponse::new(grid.clone(), t, r)?, blocked))
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub center: f64,
    pub half_width: Option<f64>,
    pub points: Option<usize>,
    pub values: Option<Vec<f64>>,
    pub frame: Option<Frame>,
}

impl SweepSpec {
    pub fn grid(&self, frame: Frame) -> CliResult<FrequencyGrid> {
        let grid =
            match (&self.values, self.half_width, self.points) {
                (Some(v), None, None) => FrequencyGrid::from_points(v.clone(), frame)?,
                (None, Some(h), Some(n)) => FrequencyGrid::uniform(self.center, h, n, frame)?,
                (None, _, _) => {
                    return Err(CliError::input(
                        "invalid scenario: sweep needs half_width and points, or values",
                    ))
                }
                (Some(_), _, _) => return Err(CliError::input(
                    "invalid scenario: sweep takes either values or half_width/points, not both",
                )),
            };
        Ok(grid)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSpec {
    #[serde(default)]
    pub center: f64,
    pub sigma: f64,
    pub frame: Option<Frame>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Objective {
    #[serde(rename = "contrast")]
    Contrast,
    #[serde(rename = "e_r")]
    ReflectionEfficiency,
    #[serde(rename = "f_t")]
    TransmissionFidelity,
}

impl Objective {
    pub fn as_str(&self) -> &'static str {
        match self {
            Objective::Contrast => "contrast",
            Objective::ReflectionEfficiency => "e_r",
            Objective::TransmissionFidelity => "f_t",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeParam {
    /// Dotted path into the scenario, e.g. `switch.omega_e` or
    /// `cascade.sites.0.g`.
    pub path: String,
    pub lo: f64,
    pub hi: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeSpec {
    pub objective: Objective,
    pub points_per_axis: Option<usize>,
    pub free: Vec<FreeParam>,
}

fn default_chain_sites() -> usize {
    401
}
fn default_k_count() -> usize {
    5
}
fn one() -> usize {
    1
}
fn default_spacing() -> usize {
    10
}
fn default_chain_tolerance() -> f64 {
    1e-8
}
fn default_time_tolerance() -> f64 {
    0.02
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum OracleSpec {
    /// Steady-state finite-chain solve against the closed form (one emitter)
    /// or the transfer-matrix cascade (several).
    Chain {
        #[serde(default = "default_chain_sites")]
        n_sites: usize,
        k_values: Option<Vec<f64>>,
        #[serde(default = "default_k_count")]
        k_count: usize,
        #[serde(default = "one")]
        emitters: usize,
        #[serde(default = "default_spacing")]
        spacing: usize,
        #[serde(default = "default_chain_tolerance")]
        tolerance: f64,
    },
    /// Wave-packet propagation against the steady-state probabilities at
    /// the carrier.
    TimeDomain {
        lattice_length: usize,
        emitter_site: Option<usize>,
        packet_center: f64,
        packet_width: f64,
        carrier: Option<f64>,
        /// Carrier detuning from the emitter; alternative to `carrier`.
        detuning: Option<f64>,
        t_max: f64,
        dt: Option<f64>,
        #[serde(default = "default_time_tolerance")]
        tolerance: f64,
        trajectory: Option<PathBuf>,
        sample_every: Option<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSpec {
    path: Option<PathBuf>,
}

#[derive(Debug, Clone)]
pub struct Scenario {
    pub raw: Table,
    pub kind: ModelKind,
    pub on: Model,
    /// Off state of the switch, if a `[switch]` block is present.
    pub off: Option<Model>,
    pub sweep: Option<SweepSpec>,
    pub packet: Option<PacketSpec>,
    pub optimize: Option<OptimizeSpec>,
    pub oracle: Option<OracleSpec>,
    pub output: Option<PathBuf>,
}

fn invalid(msg: impl std::fmt::Display) -> CliError {
    CliError::input(format!("invalid scenario: {msg}"))
}

fn section<T: for<'de> Deserialize<'de>>(raw: &Table, key: &str) -> CliResult<Option<T>> {
    raw.get(key)
        .map(|v| {
            v.clone()
                .try_into::<T>()
                .map_err(|e| invalid(format!("[{key}]: {e}")))
        })
        .transpose()
}

fn table<'a>(raw: &'a Table, key: &str) -> CliResult<Option<&'a Table>> {
    match raw.get(key) {
        None => Ok(None),
        Some(Value::Table(t)) => Ok(Some(t)),
        Some(_) => Err(invalid(format!("`{key}` must be a table"))),
    }
}

fn merged(base: &Table, overrides: Option<&Table>) -> Table {
    let mut out = base.clone();
    if let Some(o) = overrides {
        for (k, v) in o {
            out.insert(k.clone(), v.clone());
        }
    }
    out
}

fn check_fields(t: &Table, allowed: &[&str], what: &str) -> CliResult<()> {
    match t.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(invalid(format!("unknown {what} field `{k}`"))),
        None => Ok(()),
    }
}

fn validated<T: Validate>(p: T) -> CliResult<T> {
    p.validate().map_err(invalid)?;
    Ok(p)
}

fn continuum_params(t: &Table) -> CliResult<EmitterWaveguideParams> {
    check_fields(t, CONTINUUM_FIELDS, "continuum")?;
    let p: EmitterWaveguideParams = Value::Table(t.clone()).try_into().map_err(invalid)?;
    validated(p)
}

fn cavity_params(t: &Table) -> CliResult<CavityParams> {
    check_fields(t, CAVITY_FIELDS, "cavity")?;
    let mut t = t.clone();
    let q = t.remove("quality_factor");
    if q.is_some() {
        if t.contains_key("gamma_right") || t.contains_key("gamma_left") {
            return Err(invalid(
                "give either quality_factor or gamma_right/gamma_left",
            ));
        }
        // placeholders, replaced by the rate derived from Q below
        t.insert("gamma_right".into(), Value::Float(0.0));
        t.insert("gamma_left".into(), Value::Float(0.0));
    }
    let mut p: CavityParams = Value::Table(t).try_into().map_err(invalid)?;
    if let Some(q) = q {
        let q = q
            .as_float()
            .or_else(|| q.as_integer().map(|i| i as f64))
            .ok_or_else(|| invalid("quality_factor must be a number"))?;
        let rate = cavity::gamma_from_q(p.omega_c, q).map_err(CliError::from)?;
        p.gamma_right = rate;
        p.gamma_left = rate;
    }
    validated(p)
}

fn crw_params(t: &Table) -> CliResult<CrwParams> {
    check_fields(t, CRW_FIELDS, "crw")?;
    let p: CrwParams = Value::Table(t.clone()).try_into().map_err(invalid)?;
    validated(p)
}

fn site(t: &Table) -> CliResult<Site> {
    let mut body = t.clone();
    let backend = body
        .remove("backend")
        .and_then(|v| v.as_str().map(str::to_string))
        .ok_or_else(|| invalid("cascade site needs a `backend` string"))?;
    Ok(match backend.as_str() {
        "continuum" => Site::Continuum(continuum_params(&body)?),
        "cavity" => Site::Cavity(cavity_params(&body)?),
        "crw" => Site::Crw(crw_params(&body)?),
        other => return Err(invalid(format!("unknown cascade backend `{other}`"))),
    })
}

fn cascade_model(t: &Table, overrides: Option<&Table>) -> CliResult<Model> {
    const FIELDS: &[&str] = &[
        "sites",
        "separations",
        "site",
        "count",
        "separation",
        "dispersion",
    ];
    check_fields(t, FIELDS, "cascade")?;
    let as_site_table = |v: &Value| -> CliResult<Table> {
        v.as_table()
            .map(|s| merged(s, overrides))
            .ok_or_else(|| invalid("cascade sites must be tables"))
    };
    let (sites, separations) = match (t.get("sites"), t.get("site")) {
        (Some(Value::Array(list)), None) => {
            let sites = list
                .iter()
                .map(|v| site(&as_site_table(v)?))
                .collect::<CliResult<Vec<_>>>()?;
            let seps: Vec<f64> = match t.get("separations") {
                Some(v) => v
                    .clone()
                    .try_into()
                    .map_err(|e| invalid(format!("separations: {e}")))?,
                None => Vec::new(),
            };
            (sites, seps)
        }
        (None, Some(v)) => {
            let count = t
                .get("count")
                .and_then(Value::as_integer)
                .filter(|&c| c >= 1)
                .ok_or_else(|| invalid("cascade `count` must be a positive integer"))?
                as usize;
            let d = match t.get("separation") {
                Some(v) => v.as_float().or_else(|| v.as_integer().map(|i| i as f64)),
                None if count == 1 => Some(1.0),
                None => None,
            }
            .ok_or_else(|| invalid("cascade `separation` must be a number"))?;
            (vec![site(&as_site_table(v)?)?; count], vec![d; count - 1])
        }
        _ => {
            return Err(invalid(
                "cascade needs either `sites` or `site` with `count`",
            ))
        }
    };
    let layout = CascadeLayout::new(sites, separations).map_err(CliError::from)?;
    let dispersion = match t.get("dispersion") {
        Some(v) => v
            .clone()
            .try_into::<Dispersion>()
            .map_err(|e| invalid(format!("cascade.dispersion: {e}")))?,
        None => match layout.sites[0] {
            Site::Crw(p) if layout.sites.iter().all(|s| matches!(s, Site::Crw(_))) => {
                Dispersion::lattice(&p)
            }
            _ => Dispersion::linear(0.0),
        },
    };
    Ok(Model::Cascade { layout, dispersion })
}

fn model(kind: ModelKind, raw: &Table, overrides: Option<&Table>) -> CliResult<Model> {
    if kind == ModelKind::Cascade {
        let t = table(raw, "cascade")?
            .ok_or_else(|| invalid("model cascade needs a [cascade] table"))?;
        return cascade_model(t, overrides);
    }
    let params = table(raw, "params")?.ok_or_else(|| invalid("missing [params] table"))?;
    let params = merged(params, overrides);
    Ok(match kind {
        ModelKind::Continuum => Model::Continuum(continuum_params(&params)?),
        ModelKind::Cavity => Model::Cavity(cavity_params(&params)?),
        ModelKind::Crw => Model::Crw(crw_params(&params)?),
        ModelKind::Cascade => unreachable!(),
    })
}

impl Scenario {
    pub fn parse(text: &str) -> CliResult<Self> {
        let raw: Table = text.parse().map_err(invalid)?;
        Self::from_table(raw)
    }

    pub fn from_table(raw: Table) -> CliResult<Self> {
        if let Some(k) = raw.keys().find(|k| !TOP_LEVEL.contains(&k.as_str())) {
            return Err(invalid(format!("unknown top-level key `{k}`")));
        }
        match raw.get("schema") {
            Some(Value::Integer(SCHEMA_VERSION)) => {}
            Some(v) => {
                return Err(invalid(format!(
                    "unsupported schema {v}, expected {SCHEMA_VERSION}"
                )))
            }
            None => return Err(invalid(format!("missing `schema = {SCHEMA_VERSION}`"))),
        }
        let kind = match raw.get("model") {
            Some(Value::String(s)) => ModelKind::parse(s)?,
            _ => return Err(invalid("missing `model` string")),
        };
        let on = model(kind, &raw, None)?;
        let off = table(&raw, "switch")?
            .map(|sw| model(kind, &raw, Some(sw)))
            .transpose()?;
        let output: Option<OutputSpec> = section(&raw, "output")?;
        Ok(Self {
            kind,
            on,
            off,
            sweep: section(&raw, "sweep")?,
            packet: section(&raw, "packet")?,
            optimize: section(&raw, "optimize")?,
            oracle: section(&raw, "oracle")?,
            output: output.and_then(|o| o.path),
            raw,
        })
    }

    /// Frame of the sweep (or packet), defaulting per model.
    pub fn frame(&self) -> Frame {
        self.sweep
            .as_ref()
            .and_then(|s| s.frame)
            .or_else(|| self.packet.as_ref().and_then(|p| p.frame))
            .unwrap_or_else(|| self.kind.default_frame())
    }

    pub fn grid(&self) -> CliResult<FrequencyGrid> {
        self.sweep
            .as_ref()
            .ok_or_else(|| invalid("missing [sweep] table"))?
            .grid(self.frame())
    }
}

/// Set the number at dotted `path` in `raw`, creating intermediate tables.
/// Numeric segments index arrays.
pub fn set_path(raw: &mut Table, path: &str, value: f64) -> CliResult<()> {
    let parts: Vec<&str> = path.split('.').collect();
    if parts.iter().any(|p| p.is_empty()) || parts.len() < 2 {
        return Err(invalid(format!(
            "free parameter path `{path}` is malformed"
        )));
    }
    let (last, walk) = parts.split_last().expect("non-empty");
    let mut node: &mut Value = raw
        .entry(walk[0].to_string())
        .or_insert_with(|| Value::Table(Table::new()));
    for part in &walk[1..] {
        node = match node {
            Value::Table(t) => t
                .entry(part.to_string())
                .or_insert_with(|| Value::Table(Table::new())),
            Value::Array(a) => {
                let i: usize = part
                    .parse()
                    .map_err(|_| invalid(format!("`{part}` in `{path}` is not an array index")))?;
                a.get_mut(i)
                    .ok_or_else(|| invalid(format!("index {i} in `{path}` is out of range")))?
            }
            _ => return Err(invalid(format!("`{path}` does not lead to a table"))),
        };
    }
    match node {
        Value::Table(t) => {
            t.insert(last.to_string(), Value::Float(value));
            Ok(())
        }
        _ => Err(invalid(format!("`{path}` does not lead to a table"))),
    }
}

/// Wave number of the chain oracle's default checkpoints.
pub fn default_wave_numbers(count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![PI / 2.0];
    }
    (0..count)
        .map(|i| PI * (0.05 + 0.9 * i as f64 / (count - 1) as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
schema = 1
model = "continuum"
[params]
gamma_right = 1.0
gamma_left = 1.0
[sweep]
half_width = 10.0
points = 5
"#;

    #[test]
    fn parses_basic_scenario() {
        let s = Scenario::parse(BASIC).unwrap();
        assert_eq!(s.kind, ModelKind::Continuum);
        assert_eq!(s.frame(), Frame::DetuningFromEmitter);
        assert_eq!(s.grid().unwrap().points(), &[-10.0, -5.0, 0.0, 5.0, 10.0]);
        assert!(s.off.is_none());
    }

    #[test]
    fn field_level_messages() {
        let bad = BASIC.replace("gamma_right = 1.0", "gamma_right = -1.0");
        let err = Scenario::parse(&bad).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("gamma_right negative"), "{err}");

        let typo = BASIC.replace("gamma_left", "gama_left");
        assert!(Scenario::parse(&typo)
            .unwrap_err()
            .to_string()
            .contains("gama_left"));

        let schema = BASIC.replace("schema = 1", "schema = 2");
        assert!(Scenario::parse(&schema).is_err());

        let crw = "schema = 1\nmodel = \"crw\"\n[params]\nomega_c = 0.0\nxi = 0.0\ng = 1.0\nomega_e = 0.0\n";
        assert!(Scenario::parse(crw)
            .unwrap_err()
            .to_string()
            .contains("xi must be positive"));
    }

    #[test]
    fn switch_overrides_params() {
        let text = format!("{BASIC}\n[switch]\nomega_e = 10.0\n");
        let s = Scenario::parse(&text).unwrap();
        match (&s.on, s.off.as_ref().unwrap()) {
            (Model::Continuum(a), Model::Continuum(b)) => {
                assert_eq!(a.omega_e, 0.0);
                assert_eq!(b.omega_e, 10.0);
                assert_eq!(b.gamma_right, 1.0);
            }
            _ => panic!("wrong model"),
        }
    }

    #[test]
    fn cavity_from_quality_factor() {
        let text = "schema = 1\nmodel = \"cavity\"\n[params]\ng = 1.0\nomega_c = 2.0\nomega_e = 2.0\nquality_factor = 0.5\n";
        match Scenario::parse(text).unwrap().on {
            Model::Cavity(p) => assert_eq!((p.gamma_right, p.gamma_left), (2.0, 2.0)),
            _ => panic!("wrong model"),
        }
    }

    #[test]
    fn cascade_shorthand() {
        let text = r#"
schema = 1
model = "cascade"
[cascade]
count = 3
separation = 1.0
site = { backend = "continuum", gamma_right = 1.0, gamma_left = 1.0 }
[cascade.dispersion]
kind = "linear"
k_ref = 1.5707963267948966
group_velocity = 100.0
"#;
        match Scenario::parse(text).unwrap().on {
            Model::Cascade { layout, dispersion } => {
                assert_eq!(layout.sites.len(), 3);
                assert_eq!(layout.separations, vec![1.0, 1.0]);
                assert!(matches!(dispersion, Dispersion::Linear { .. }));
            }
            _ => panic!("wrong model"),
        }
    }

    #[test]
    fn oracle_block() {
        let text = "schema = 1\nmodel = \"crw\"\n[params]\nxi = 1.0\ng = 0.5\n[oracle]\nkind = \"chain\"\nn_sites = 401\n";
        let s = Scenario::parse(text).unwrap();
        assert!(matches!(
            s.oracle,
            Some(OracleSpec::Chain {
                n_sites: 401,
                k_count: 5,
                ..
            })
        ));
        let typo = text.replace("n_sites", "sites");
        assert!(Scenario::parse(&typo).is_err());
    }

    #[test]
    fn set_path_creates_tables() {
        let mut raw: Table = BASIC.parse().unwrap();
        set_path(&mut raw, "switch.omega_e", 3.0).unwrap();
        set_path(&mut raw, "params.gamma_loss", 0.5).unwrap();
        let s = Scenario::from_table(raw.clone()).unwrap();
        match s.off.unwrap() {
            Model::Continuum(p) => assert_eq!((p.omega_e, p.gamma_loss), (3.0, 0.5)),
            _ => panic!("wrong model"),
        }
        assert!(set_path(&mut raw, "schema", 1.0).is_err());
        assert!(set_path(&mut raw, "params..g", 1.0).is_err());
    }
}
