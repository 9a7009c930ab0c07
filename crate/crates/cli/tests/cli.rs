use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn wqed(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(args)
        .current_dir(dir)
        .env_remove("WQED_THREADS")
        .output()
        .expect("wqed binary runs")
}

fn scenario(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Data rows as maps from header to cell.
fn parse_rows(csv: &str) -> Vec<Vec<(String, String)>> {
    let mut lines = csv.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<String> = lines.next().unwrap().split(',').map(String::from).collect();
    lines
        .map(|l| {
            header
                .iter()
                .cloned()
                .zip(l.split(',').map(String::from))
                .collect()
        })
        .collect()
}

fn num(row: &[(String, String)], key: &str) -> f64 {
    row.iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("no column {key}"))
        .1
        .parse()
        .unwrap()
}

const LOSSLESS: &str = r#"
schema = 1
model = "continuum"
[params]
gamma_right = 1.0
gamma_left = 1.0
[sweep]
half_width = 10.0
points = 1001
"#;

#[test]
fn spectrum_lossless_resonance() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "s.toml", LOSSLESS);
    let out = wqed(&["spectrum", "--config", cfg.to_str().unwrap()], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.starts_with("# wqed: "));
    assert!(text.contains("# scenario-sha256: "));
    assert!(text.contains("\nomega_or_delta,frame,t_re,t_im,r_re,r_im,T,R,loss\n"));
    let rows = parse_rows(&text);
    assert_eq!(rows.len(), 1001);
    let centre = &rows[500];
    assert_eq!(num(centre, "omega_or_delta"), 0.0);
    assert_eq!(num(centre, "T"), 0.0);
    assert_eq!(num(centre, "R"), 1.0);
    assert_eq!(centre[1].1, "detuning-from-emitter");
    for r in &rows {
        assert!((num(r, "T") + num(r, "R") + num(r, "loss") - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn spectrum_with_loss() {
    let dir = TempDir::new().unwrap();
    let body = LOSSLESS.replace(
        "gamma_left = 1.0",
        "gamma_left = 1.0\ngamma_loss = 0.2222222222222222",
    );
    let cfg = scenario(&dir, "s.toml", &body);
    let out_path = dir.path().join("out.csv");
    let out = wqed(
        &[
            "spectrum",
            "--config",
            cfg.to_str().unwrap(),
            "--out",
            out_path.to_str().unwrap(),
        ],
        dir.path(),
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let rows = parse_rows(&std::fs::read_to_string(out_path).unwrap());
    let centre = &rows[500];
    assert!((num(centre, "T") - 0.01).abs() < 1e-12);
    assert!((num(centre, "R") - 0.81).abs() < 1e-12);
    assert!((num(centre, "loss") - 0.18).abs() < 1e-12);
}

#[test]
fn validation_failures_exit_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        LOSSLESS.replace("points = 1001", "points = 0"),
        LOSSLESS.replace("points = 1001", "points = 1"),
        LOSSLESS.replace("gamma_right = 1.0", "gamma_right = -1.0"),
        LOSSLESS.replace("schema = 1", "schema = 7"),
        LOSSLESS.replace("model = \"continuum\"", "model = \"laser\""),
        "schema = 1\nmodel = \"continuum\"\n[params]\ngamma_right = 1.0\ngamma_left = 1.0\n[sweep]\nvalues = []\n".to_string(),
        "not toml at all [".to_string(),
    ];
    for (i, body) in cases.iter().enumerate() {
        let cfg = scenario(&dir, &format!("bad{i}.toml"), body);
        let out = wqed(&["spectrum", "--config", cfg.to_str().unwrap()], dir.path());
        assert_eq!(out.status.code(), Some(2), "case {i}");
        assert!(!out.stderr.is_empty());
    }
    let neg = scenario(
        &dir,
        "neg.toml",
        &LOSSLESS.replace("gamma_right = 1.0", "gamma_right = -1.0"),
    );
    let out = wqed(&["spectrum", "--config", neg.to_str().unwrap()], dir.path());
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma_right negative"));

    let missing = wqed(&["spectrum", "--config", "nope.toml"], dir.path());
    assert_eq!(missing.status.code(), Some(2));
    let unknown_figure = wqed(&["figure", "sunset"], dir.path());
    assert_eq!(unknown_figure.status.code(), Some(2));
    let no_command = wqed(&[], dir.path());
    assert_eq!(no_command.status.code(), Some(2));
}

#[test]
fn blocked_cascade_exits_3() {
    let dir = TempDir::new().unwrap();
    // every point sits on a resonance of the lossless emitter
    let body = r#"
schema = 1
model = "cascade"
[cascade]
count = 2
separation = 1.0
site = { backend = "continuum", gamma_right = 1.0, gamma_left = 1.0 }
[sweep]
values = [-1e-300, 0.0, 1e-300]
"#;
    let cfg = scenario(&dir, "c.toml", body);
    let out = wqed(&["spectrum", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(3));
    // the spectrum is still written
    let rows = parse_rows(&stdout(&out));
    assert_eq!(num(&rows[1], "R"), 1.0);

    let fine = body.replace(
        "values = [-1e-300, 0.0, 1e-300]",
        "half_width = 5.0\npoints = 101",
    );
    let cfg = scenario(&dir, "ok.toml", &fine);
    let out = wqed(&["spectrum", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("# blocked-points: 1\n"));
}

#[test]
fn figures_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    for id in [
        "lorentzian",
        "lorentzian-loss",
        "crw-band",
        "crw-scatter",
        "detuning-switch",
        "chiral-switch",
        "rabi-switch",
    ] {
        let a = wqed(&["figure", id], dir.path());
        let b = wqed(&["figure", id, "--threads", "3"], dir.path());
        assert!(a.status.success(), "{id}");
        assert_eq!(a.stdout, b.stdout, "{id}");
        assert!(!a.stdout.contains(&b'\r'));
    }
}

#[test]
fn figure_contents() {
    let dir = TempDir::new().unwrap();
    let lor = parse_rows(&stdout(&wqed(&["figure", "lorentzian"], dir.path())));
    for r in &lor {
        assert!((num(r, "T") + num(r, "R") - 1.0).abs() < 1e-12);
    }

    let crw = parse_rows(&stdout(&wqed(&["figure", "crw-scatter"], dir.path())));
    let at = |x: f64| crw.iter().find(|r| num(r, "delta_over_g") == x).unwrap();
    for x in [-4.0, 0.0, 4.0] {
        assert_eq!(num(at(x), "R"), 1.0, "Δ/g = {x}");
    }
    assert!((num(at(1.0), "T") - 15.0 / 16.0).abs() < 1e-12);

    let rabi = parse_rows(&stdout(&wqed(&["figure", "rabi-switch"], dir.path())));
    let step = 20.0 / 4000.0;
    let peak = |lo: f64, hi: f64| {
        rabi.iter()
            .filter(|r| (lo..hi).contains(&num(r, "omega_minus_omega_c_over_gamma")))
            .max_by(|a, b| num(a, "R_strong").total_cmp(&num(b, "R_strong")))
            .map(|r| num(r, "omega_minus_omega_c_over_gamma"))
            .unwrap()
    };
    assert!((peak(-10.0, 0.0) + 5.0).abs() <= step);
    assert!((peak(0.0, 10.1) - 5.0).abs() <= step);

    let chiral = parse_rows(&stdout(&wqed(&["figure", "chiral-switch"], dir.path())));
    let centre = chiral
        .iter()
        .find(|r| num(r, "delta_over_gamma") == 0.0)
        .unwrap();
    assert_eq!(
        (num(centre, "R_symmetric"), num(centre, "R_chiral")),
        (1.0, 0.0)
    );
}

const SWITCH: &str = r#"
schema = 1
model = "continuum"
[params]
gamma_right = 1.0
gamma_left = 1.0
[sweep]
half_width = 0.1
points = 2001
[packet]
center = 0.0
sigma = 0.001
[switch]
omega_e = 10.0
"#;

#[test]
fn metrics_for_detuning_switch() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "m.toml", SWITCH);
    let out = wqed(&["metrics", "--config", cfg.to_str().unwrap()], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("\ne_t,e_r,f_t,f_r,p_t,p_r,contrast,extinction_db\n"));
    let rows = parse_rows(&text);
    assert_eq!(rows.len(), 1);
    assert!(num(&rows[0], "e_r") >= 0.999);
    assert!((num(&rows[0], "contrast") - (1.0 - 1.0 / 101.0)).abs() < 1e-3);

    let same = scenario(
        &dir,
        "same.toml",
        &SWITCH.replace("omega_e = 10.0", "omega_e = 0.0"),
    );
    let rows_same = parse_rows(&stdout(&wqed(
        &["metrics", "--config", same.to_str().unwrap()],
        dir.path(),
    )));
    assert_eq!(num(&rows_same[0], "contrast"), 0.0);
    assert_eq!(num(&rows_same[0], "extinction_db"), 0.0);

    let wide = scenario(
        &dir,
        "wide.toml",
        &SWITCH.replace("sigma = 0.001", "sigma = 0.05"),
    );
    let out = wqed(&["metrics", "--config", wide.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn optimize_monotone_contrast_hits_bound() {
    let dir = TempDir::new().unwrap();
    let body = r#"
schema = 1
model = "continuum"
[params]
gamma_right = 1.0
gamma_left = 1.0
[packet]
center = 0.0
sigma = 0.0
[optimize]
objective = "contrast"
free = [{ path = "switch.omega_e", lo = 0.0, hi = 10.0 }]
"#;
    let cfg = scenario(&dir, "o.toml", body);
    let out = wqed(&["optimize", "--config", cfg.to_str().unwrap()], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("# best: switch.omega_e=10.0\n"));
    let rows = parse_rows(&text);
    let best = rows.last().unwrap();
    assert_eq!(best[0].1, "best");
    assert_eq!(num(best, "switch.omega_e"), 10.0);
    assert!((num(best, "contrast") - (1.0 - 1.0 / 101.0)).abs() < 1e-12);
    assert!(rows.iter().filter(|r| r[0].1 == "grid").count() == 33);

    let degenerate = scenario(
        &dir,
        "d.toml",
        &body.replace("lo = 0.0, hi = 10.0", "lo = 3.0, hi = 3.0"),
    );
    let rows_d = parse_rows(&stdout(&wqed(
        &["optimize", "--config", degenerate.to_str().unwrap()],
        dir.path(),
    )));
    assert_eq!(num(rows_d.last().unwrap(), "switch.omega_e"), 3.0);

    let unbounded = scenario(&dir, "u.toml", &body.replace("hi = 10.0", "hi = inf"));
    assert_eq!(
        wqed(
            &["optimize", "--config", unbounded.to_str().unwrap()],
            dir.path()
        )
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn optimize_packet_centre() {
    let dir = TempDir::new().unwrap();
    let body = r#"
schema = 1
model = "continuum"
[params]
gamma_right = 1.0
gamma_left = 1.0
[sweep]
half_width = 12.0
points = 2401
[packet]
center = 0.0
sigma = 0.5
[optimize]
objective = "e_r"
free = [{ path = "packet.center", lo = -3.0, hi = 3.0 }]
"#;
    let cfg = scenario(&dir, "o.toml", body);
    let out = wqed(&["optimize", "--config", cfg.to_str().unwrap()], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = parse_rows(&stdout(&out));
    assert!(num(rows.last().unwrap(), "packet.center").abs() < 1e-3);
}

const CRW: &str = r#"
schema = 1
model = "crw"
[params]
omega_c = 0.0
xi = 1.0
g = 0.5
omega_e = 0.0
"#;

#[test]
fn chain_oracle_rows() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(
        &dir,
        "o.toml",
        &format!("{CRW}[oracle]\nkind = \"chain\"\nn_sites = 401\nk_count = 5\n"),
    );
    let out = wqed(&["oracle", "--config", cfg.to_str().unwrap()], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("\ncheckpoint,quantity,closed_form,oracle,abs_diff,tolerance\n"));
    let rows = parse_rows(&text);
    assert_eq!(rows.len(), 20);
    for r in &rows {
        assert!(num(r, "abs_diff") < 1e-8);
    }

    let array = scenario(
        &dir,
        "a.toml",
        &format!("{CRW}[oracle]\nkind = \"chain\"\nemitters = 3\nspacing = 7\nk_count = 4\n"),
    );
    assert!(
        wqed(&["oracle", "--config", array.to_str().unwrap()], dir.path())
            .status
            .success()
    );

    let even = scenario(
        &dir,
        "e.toml",
        &format!("{CRW}[oracle]\nkind = \"chain\"\nn_sites = 400\n"),
    );
    assert_eq!(
        wqed(&["oracle", "--config", even.to_str().unwrap()], dir.path())
            .status
            .code(),
        Some(2)
    );

    let strict = scenario(
        &dir,
        "t.toml",
        &format!("{CRW}[oracle]\nkind = \"chain\"\ntolerance = 0.0\nk_values = [1.0]\n"),
    );
    let out = wqed(
        &["oracle", "--config", strict.to_str().unwrap()],
        dir.path(),
    );
    // rounding differences exist, so a zero tolerance must fail with code 3
    if rows_nonzero(&stdout(&out)) {
        assert_eq!(out.status.code(), Some(3));
    }
}

fn rows_nonzero(csv: &str) -> bool {
    parse_rows(csv).iter().any(|r| num(r, "abs_diff") > 0.0)
}

#[test]
fn time_domain_oracle_and_boundary() {
    let dir = TempDir::new().unwrap();
    let body = format!(
        "{CRW}[oracle]\nkind = \"time-domain\"\nlattice_length = 4001\npacket_center = 1520.0\npacket_width = 80.0\ndetuning = 0.125\nt_max = 1500.0\ntrajectory = \"traj.csv\"\nsample_every = 4000\n"
    );
    let cfg = scenario(&dir, "td.toml", &body);
    let out = wqed(&["oracle", "--config", cfg.to_str().unwrap()], dir.path());
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = parse_rows(&stdout(&out));
    let r = rows.iter().find(|r| r[1].1 == "R").unwrap();
    assert!((num(r, "oracle") - 0.5).abs() < 0.02);
    let traj = std::fs::read_to_string(dir.path().join("traj.csv")).unwrap();
    assert!(traj.contains("\ntime,site,population\n"));

    let short = body
        .replace("lattice_length = 4001", "lattice_length = 801")
        .replace("packet_center = 1520.0", "packet_center = 200.0");
    let cfg = scenario(&dir, "short.toml", &short);
    let out = wqed(&["oracle", "--config", cfg.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("packet touched boundary"));
}

#[test]
fn thread_override_from_environment() {
    let dir = TempDir::new().unwrap();
    let cfg = scenario(&dir, "s.toml", LOSSLESS);
    let base = wqed(&["spectrum", "--config", cfg.to_str().unwrap()], dir.path());
    let env = Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args([
            "spectrum",
            "--config",
            cfg.to_str().unwrap(),
            "--threads",
            "1",
        ])
        .env("WQED_THREADS", "4")
        .output()
        .unwrap();
    assert!(env.status.success());
    assert_eq!(base.stdout, env.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_wqed"))
        .args(["spectrum", "--config", cfg.to_str().unwrap()])
        .env("WQED_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
