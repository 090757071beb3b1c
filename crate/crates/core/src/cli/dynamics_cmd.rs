use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use super::{potential_from_config, CliError, Format, RunConfig, POTENTIAL_KEYS};
use crate::dynamics::{
    integrate, radial_period_quadrature, ApocenterObserver, CasimirMonitor, Direction, DynError, EnergyMonitor,
    IntegrateOptions, Mode, Model, Section, SectionKind, SectionObserver, Space, SystemParams, Trajectory,
};
use crate::potential::PotentialSpec;

const SIM_KEYS: [&str; 17] = [
    "space", "m1", "m2", "R", "mode", "mu", "nu", "r", "p_r", "phi", "p_phi", "p3", "p4", "p5", "dt", "t_end", "stride",
];
const SECTION_KEYS: [&str; 3] = ["section.kind", "section.value", "section.direction"];

fn setup_error(e: DynError) -> CliError {
    CliError::Config(e.to_string())
}

struct Setup {
    model: Model,
    x0: Vec<f64>,
    dt: f64,
    t_end: f64,
    stride: usize,
}

fn setup(cfg: &RunConfig) -> Result<Setup, CliError> {
    let space = match cfg.get_str("space").unwrap_or("sphere") {
        "sphere" => Space::Sphere,
        "hyperbolic" => Space::Hyperbolic,
        other => return Err(CliError::Config(format!("space must be sphere or hyperbolic, got {other:?}"))),
    };
    let mode = match cfg.require::<String>("mode")?.as_str() {
        "generic" => Mode::Generic {
            mu: cfg.require("mu")?,
            nu: cfg.require("nu")?,
        },
        "equal_casimir" => Mode::EqualCasimir,
        "nu_zero" => Mode::NuZero,
        "integrable" => Mode::Integrable { nu: cfg.require("nu")? },
        "geodesic" => Mode::Geodesic,
        other => {
            return Err(CliError::Config(format!(
                "unknown mode {other:?} (generic, equal_casimir, nu_zero, integrable, geodesic)"
            )))
        }
    };
    let params = SystemParams::new(
        cfg.positive("m1")?,
        cfg.positive("m2")?,
        cfg.positive("R")?,
        space,
        potential_from_config(cfg)?,
    )
    .map_err(setup_error)?;
    let model = Model::new(params, mode).map_err(setup_error)?;
    let x0 = if mode.is_orbit() {
        vec![
            cfg.require("r")?,
            cfg.or("p_r", 0.0)?,
            cfg.require("p3")?,
            cfg.require("p4")?,
            cfg.require("p5")?,
        ]
    } else {
        let default_pphi = match mode {
            Mode::Integrable { nu } => nu,
            _ => 0.0,
        };
        vec![cfg.require("r")?, cfg.or("p_r", 0.0)?, cfg.or("phi", 0.0)?, cfg.or("p_phi", default_pphi)?]
    };
    model.check_domain(&x0).map_err(setup_error)?;
    let dt = cfg.positive("dt")?;
    let t_end: f64 = cfg.require("t_end")?;
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(CliError::Config(format!("t_end must be >= 0, got {t_end}")));
    }
    let stride: usize = cfg.or("stride", 1)?;
    Ok(Setup {
        model,
        x0,
        dt,
        t_end,
        stride: stride.max(1),
    })
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn trajectory_csv(traj: &Trajectory) -> String {
    let mut out = String::from("t,");
    out.push_str(&traj.state_names.join(","));
    out.push_str(",H");
    for c in &traj.casimir_names {
        out.push_str(",casimir:");
        out.push_str(c);
    }
    out.push('\n');
    for s in &traj.samples {
        let row: Vec<String> = std::iter::once(s.t)
            .chain(s.x.iter().copied())
            .chain(std::iter::once(s.h))
            .chain(s.casimirs.iter().copied())
            .map(fmt)
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn events_jsonl(traj: &Trajectory) -> String {
    traj.events
        .iter()
        .map(|e| serde_json::to_string(e).expect("event serializes") + "\n")
        .collect()
}

fn run_failed(e: DynError) -> CliError {
    CliError::Run(e.to_string())
}

pub fn simulate(cfg: &RunConfig, dir: &Path, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    let allowed: Vec<&str> = SIM_KEYS.iter().chain(POTENTIAL_KEYS.iter()).copied().collect();
    cfg.check_keys(&allowed)?;
    let s = setup(cfg)?;
    let mut energy = EnergyMonitor::default();
    let mut casimirs = CasimirMonitor::default();
    let mut apo = ApocenterObserver::default();
    let traj = integrate(
        &s.model,
        &s.x0,
        s.t_end,
        s.dt,
        IntegrateOptions { stride: s.stride },
        &mut [&mut energy, &mut casimirs, &mut apo],
    )
    .map_err(run_failed)?;

    std::fs::create_dir_all(dir)?;
    match format {
        Format::Csv => std::fs::write(dir.join("trajectory.csv"), trajectory_csv(&traj))?,
        Format::Json => std::fs::write(
            dir.join("trajectory.json"),
            serde_json::to_string(&traj).expect("trajectory serializes"),
        )?,
    }
    std::fs::write(dir.join("events.jsonl"), events_jsonl(&traj))?;

    let mut summary = Map::new();
    summary.insert("mode".into(), json!(s.model.mode.name()));
    summary.insert("space".into(), json!(s.model.params.space.name()));
    summary.insert("steps".into(), json!(traj.steps));
    summary.insert("final_time".into(), json!(traj.final_time));
    summary.insert("halted".into(), json!(traj.halted));
    summary.insert("events".into(), json!(traj.events.len()));
    summary.insert("energy_drift".into(), json!(energy.max_drift));
    let cas: Map<String, Value> = casimirs
        .names
        .iter()
        .zip(&casimirs.max_drift)
        .map(|(n, d)| (n.to_string(), json!(d)))
        .collect();
    summary.insert("casimir_drift".into(), Value::Object(cas));
    if let Mode::Integrable { .. } = s.model.mode {
        let quad = radial_period_quadrature(&s.model, &s.x0).map_err(run_failed)?;
        let sim = apo.period();
        summary.insert(
            "period".into(),
            json!({
                "simulated": sim,
                "quadrature": quad,
                "rel_diff": sim.map(|p| (p - quad).abs() / quad),
                "apocenters": apo.times.len(),
            }),
        );
    }
    if s.model.mode == Mode::Geodesic && s.model.params.potential == PotentialSpec::Zero {
        // θ = 2 arctan r advances at √(2H/m)/R between passages of the poles
        let p = &s.model.params;
        let h = s.model.hamiltonian(&s.x0).map_err(run_failed)?;
        let rate = (2.0 * h / p.m()).sqrt() / p.radius * s.x0[1].signum();
        let theta0 = 2.0 * s.x0[0].atan();
        let dev = traj
            .samples
            .iter()
            .map(|x| (2.0 * x.x[0].atan() - theta0 - rate * x.t).abs())
            .fold(0.0f64, f64::max);
        summary.insert("arc_linearity".into(), json!(dev));
    }
    let summary = Value::Object(summary);
    std::fs::write(dir.join("summary.json"), serde_json::to_string_pretty(&summary).expect("serializable"))?;
    writeln!(out, "{summary}")?;
    Ok(())
}

fn section_from_config(cfg: &RunConfig) -> Result<Section, CliError> {
    let kind = match cfg.get_str("section.kind").unwrap_or("phi") {
        "phi" => SectionKind::Phi,
        "p_phi" => SectionKind::PPhi,
        other => return Err(CliError::Config(format!("section.kind must be phi or p_phi, got {other:?}"))),
    };
    let direction = match cfg.get_str("section.direction").unwrap_or("increasing") {
        "increasing" => Direction::Increasing,
        "decreasing" => Direction::Decreasing,
        "both" => Direction::Both,
        other => {
            return Err(CliError::Config(format!(
                "section.direction must be increasing, decreasing or both, got {other:?}"
            )))
        }
    };
    Ok(Section {
        kind,
        value: cfg.or("section.value", 0.0)?,
        direction,
    })
}

pub fn poincare(cfg: &RunConfig, dir: &Path, out: &mut dyn Write) -> Result<(), CliError> {
    let allowed: Vec<&str> = SIM_KEYS
        .iter()
        .chain(POTENTIAL_KEYS.iter())
        .chain(SECTION_KEYS.iter())
        .copied()
        .collect();
    cfg.check_keys(&allowed)?;
    let s = setup(cfg)?;
    if s.model.mode.is_orbit() {
        return Err(CliError::Config(format!(
            "mode {} has no (phi, p_phi) pair to section",
            s.model.mode.name()
        )));
    }
    let section = section_from_config(cfg)?;
    let mut obs = SectionObserver::new(section);
    let traj = integrate(
        &s.model,
        &s.x0,
        s.t_end,
        s.dt,
        IntegrateOptions { stride: usize::MAX },
        &mut [&mut obs],
    )
    .map_err(run_failed)?;
    let mut csv = String::from("t,r,p_r\n");
    for p in &obs.points {
        csv.push_str(&format!("{},{},{}\n", fmt(p.t), fmt(p.r), fmt(p.p_r)));
    }
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("section.csv"), csv)?;
    std::fs::write(dir.join("events.jsonl"), events_jsonl(&traj))?;

    let mut summary = json!({
        "points": obs.points.len(),
        "halted": traj.halted,
        "final_time": traj.final_time,
    });
    // with φ cyclic, H depends on (r, p_r) only, so section points must lie on one level curve
    if matches!(s.model.mode, Mode::Integrable { .. } | Mode::Geodesic) {
        let h0 = s.model.hamiltonian(&s.x0).map_err(run_failed)?;
        let scatter = obs
            .points
            .iter()
            .filter_map(|p| {
                let mut x = s.x0.clone();
                x[0] = p.r;
                x[1] = p.p_r;
                s.model.hamiltonian(&x).ok()
            })
            .map(|h| (h - h0).abs() / h0.abs().max(f64::MIN_POSITIVE))
            .fold(0.0f64, f64::max);
        summary["energy_scatter"] = json!(scatter);
    }
    writeln!(out, "{summary}")?;
    Ok(())
}
