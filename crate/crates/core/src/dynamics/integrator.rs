use nalgebra::{DMatrix, DVector, Dyn, LU};
use serde::Serialize;

use super::hamiltonian::Model;
use super::params::Space;
use super::DynError;

pub const NEWTON_TOL: f64 = 1e-13;
pub const NEWTON_MAX_ITER: usize = 50;
/// r below this halts with a collision-approach event.
pub const COLLISION_R: f64 = 1e-8;
/// Hyperbolic runs halt when r comes within this of 1.
pub const BOUNDARY_MARGIN: f64 = 1e-8;
/// Sphere generic runs halt when |p_φ| comes within this of min(μ,ν).
pub const CHART_MARGIN: f64 = 1e-8;
/// Sphere runs switch to s = 1/r above this r, and back below `UNINVERT_R`.
pub const INVERT_R: f64 = 2.0;
pub const UNINVERT_R: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    CollisionApproach,
    Boundary,
    ChartSingularity,
    CoordinateSwitch,
    AntipodalPassage,
}

impl EventKind {
    pub fn halts(self) -> bool {
        matches!(self, EventKind::CollisionApproach | EventKind::Boundary | EventKind::ChartSingularity)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Event {
    pub t: f64,
    pub step: usize,
    pub kind: EventKind,
    pub message: String,
}

/// Working coordinates of the integrator: the state itself, or with (r, p_r) replaced by
/// (s, p_s) = (1/r, −r²p_r) when `inverted`.
#[derive(Debug, Clone, PartialEq)]
pub struct Phase {
    pub y: Vec<f64>,
    pub inverted: bool,
}

impl Phase {
    pub fn new(x: Vec<f64>) -> Self {
        Self { y: x, inverted: false }
    }

    /// The state in r-coordinates. Negative s is read through the antipodal symmetry r = 1/|s|.
    pub fn x(&self) -> Vec<f64> {
        let mut x = self.y.clone();
        if self.inverted {
            let s = self.y[0];
            x[0] = 1.0 / s.abs();
            x[1] = -self.y[1] * s * s;
        }
        x
    }

    fn set_inverted(&mut self, inverted: bool) {
        if inverted == self.inverted {
            return;
        }
        // the map (r, p_r) ↔ (s, p_s) is an involution
        let (a, b) = (self.y[0], self.y[1]);
        self.y[0] = 1.0 / a;
        self.y[1] = -b * a * a;
        self.inverted = inverted;
    }
}

fn inf_norm(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Implicit midpoint rule with a simplified Newton solver.
///
/// The finite-difference Jacobian is kept between steps and rebuilt only when the
/// iteration stops contracting quickly.
pub struct Integrator<'a> {
    model: &'a Model,
    jacobian: Option<(LU<f64, Dyn, Dyn>, f64, bool)>,
    pub newton_iterations: usize,
}

impl<'a> Integrator<'a> {
    pub fn new(model: &'a Model) -> Self {
        Self {
            model,
            jacobian: None,
            newton_iterations: 0,
        }
    }

    /// Vector field in the working chart.
    fn field(&self, y: &[f64], inverted: bool) -> Result<Vec<f64>, DynError> {
        if !inverted {
            return self.model.vector_field(y);
        }
        let phase = Phase {
            y: y.to_vec(),
            inverted: true,
        };
        let (_, g) = self.model.eval(&phase.x())?;
        let (s, ps) = (y[0], y[1]);
        let mut gt = g.clone();
        // r = 1/|s|, p_r = −s²p_s
        gt[0] = -s.signum() * g[0] / (s * s) - 2.0 * s * ps * g[1];
        gt[1] = -s * s * g[1];
        Ok(self.model.vector_field_from_gradient(y, &gt))
    }

    fn jacobian_at(&self, z: &[f64], dt: f64, inverted: bool) -> Result<DMatrix<f64>, DynError> {
        let n = z.len();
        let mut j = DMatrix::identity(n, n);
        let mut w = z.to_vec();
        for c in 0..n {
            let mut h = 1e-7 * z[c].abs().max(1e-3);
            if c == 0 && self.model.params.space == Space::Hyperbolic {
                h = h.min(1e-4 * (1.0 - z[0].abs()));
            }
            w[c] = z[c] + h;
            let fp = self.field(&w, inverted)?;
            w[c] = z[c] - h;
            let fm = self.field(&w, inverted)?;
            w[c] = z[c];
            for r in 0..n {
                j[(r, c)] -= 0.5 * dt * (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        Ok(j)
    }

    /// One step of signed size `dt`. Negative steps integrate backwards.
    pub fn step(&mut self, phase: &Phase, dt: f64) -> Result<Phase, DynError> {
        let inverted = phase.inverted;
        let y0 = phase.y.clone();
        let n = y0.len();
        let f0 = self.field(&y0, inverted)?;
        let mut y: Vec<f64> = y0.iter().zip(&f0).map(|(a, f)| a + dt * f).collect();
        if !matches!(&self.jacobian, Some((_, d, inv)) if *d == dt && *inv == inverted) {
            self.jacobian = None;
        }
        let mut prev_res = f64::INFINITY;
        let mut polished = false;
        for _ in 0..NEWTON_MAX_ITER {
            let mid: Vec<f64> = y0.iter().zip(&y).map(|(a, b)| 0.5 * (a + b)).collect();
            let f = self.field(&mid, inverted)?;
            let g: Vec<f64> = (0..n).map(|i| y[i] - y0[i] - dt * f[i]).collect();
            let res = inf_norm(&g);
            // componentwise, so a large angle does not loosen the test on (r, p_r)
            let converged = (0..n).all(|i| {
                let scale = y[i].abs().max(y0[i].abs()).max((dt * f[i]).abs()).max(1.0);
                g[i].abs() <= NEWTON_TOL * scale
            });
            if converged && polished {
                return Ok(Phase { y, inverted });
            }
            if self.jacobian.is_none() || (!converged && res > 0.1 * prev_res) {
                let lu = self.jacobian_at(&mid, dt, inverted)?.lu();
                self.jacobian = Some((lu, dt, inverted));
            }
            prev_res = res;
            let (lu, _, _) = self.jacobian.as_ref().expect("jacobian set above");
            let delta = lu.solve(&DVector::from_vec(g)).ok_or(DynError::SingularJacobian)?;
            for i in 0..n {
                y[i] -= delta[i];
            }
            // one correction past the tolerance keeps the per-step error well below it
            polished = converged;
            self.newton_iterations += 1;
        }
        Err(DynError::NewtonDiverged {
            iterations: NEWTON_MAX_ITER,
        })
    }

    /// Step followed by chart bookkeeping; returns any non-halting chart events.
    fn advance(&mut self, phase: &Phase, dt: f64) -> Result<(Phase, Vec<(EventKind, String)>), DynError> {
        let mut events = Vec::new();
        let attempt = self.step(phase, dt);
        // near the antipode r can blow up within one step; redo it in the inverted chart
        let retry = self.model.params.space == Space::Sphere
            && !phase.inverted
            && phase.y[0] > 1.0
            && attempt.as_ref().map_or(true, |n| !(n.y[0] > 0.0));
        let mut next = if retry {
            let mut inv = phase.clone();
            inv.set_inverted(true);
            events.push((EventKind::CoordinateSwitch, format!("r = {:.6e}: step redone in s = 1/r", phase.y[0])));
            self.step(&inv, dt)?
        } else {
            attempt?
        };
        if self.model.params.space == Space::Sphere {
            if next.inverted && next.y[0] < 0.0 {
                // s crossed 0; (s, p_s) → (−s, −p_s) is a symmetry of the inverted Hamiltonian
                next.y[0] = -next.y[0];
                next.y[1] = -next.y[1];
                events.push((EventKind::AntipodalPassage, "r passed through infinity".to_string()));
            }
            let r = next.x()[0];
            if !next.inverted && r > INVERT_R {
                next.set_inverted(true);
                events.push((EventKind::CoordinateSwitch, format!("r = {r:.6e} > {INVERT_R:e}: switched to s = 1/r")));
            } else if next.inverted && r < UNINVERT_R {
                next.set_inverted(false);
                events.push((EventKind::CoordinateSwitch, format!("r = {r:.6e} < {UNINVERT_R:e}: switched back to r")));
            }
        }
        Ok((next, events))
    }
}

/// One forward step of size dt > 0 from a state given in r-coordinates.
pub fn flow_step(model: &Model, x: &[f64], dt: f64) -> Result<Vec<f64>, DynError> {
    if !(dt > 0.0) {
        return Err(DynError::InvalidParam(format!("dt must be positive, got {dt}")));
    }
    model.check_domain(x)?;
    let mut integ = Integrator::new(model);
    Ok(integ.step(&Phase::new(x.to_vec()), dt)?.x())
}

/// Called after every step (and once for the initial state).
pub trait Observer {
    fn observe(&mut self, t: f64, x: &[f64], model: &Model);
}

/// Tracks max |H(t) − H(0)| relative to |H(0)| (absolute when H(0) = 0).
#[derive(Debug, Default, Clone)]
pub struct EnergyMonitor {
    pub h0: Option<f64>,
    pub max_drift: f64,
}

impl Observer for EnergyMonitor {
    fn observe(&mut self, _t: f64, x: &[f64], model: &Model) {
        let Ok(h) = model.hamiltonian(x) else { return };
        let h0 = *self.h0.get_or_insert(h);
        let scale = if h0 == 0.0 { 1.0 } else { h0.abs() };
        self.max_drift = self.max_drift.max((h - h0).abs() / scale);
    }
}

/// Tracks relative drift of each Casimir the mode carries.
#[derive(Debug, Default, Clone)]
pub struct CasimirMonitor {
    pub names: Vec<&'static str>,
    pub initial: Vec<f64>,
    pub max_drift: Vec<f64>,
}

impl Observer for CasimirMonitor {
    fn observe(&mut self, _t: f64, x: &[f64], model: &Model) {
        let cs = model.casimirs(x);
        if self.initial.is_empty() {
            self.names = cs.iter().map(|c| c.0).collect();
            self.initial = cs.iter().map(|c| c.1).collect();
            self.max_drift = vec![0.0; cs.len()];
        }
        for (i, (_, v)) in cs.iter().enumerate() {
            let c0 = self.initial[i];
            let scale = if c0 == 0.0 { 1.0 } else { c0.abs() };
            self.max_drift[i] = self.max_drift[i].max((v - c0).abs() / scale);
        }
    }
}

impl CasimirMonitor {
    pub fn worst(&self) -> f64 {
        self.max_drift.iter().fold(0.0, |a, b| a.max(*b))
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Sample {
    pub t: f64,
    pub x: Vec<f64>,
    pub h: f64,
    pub casimirs: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub state_names: Vec<String>,
    pub casimir_names: Vec<String>,
    pub samples: Vec<Sample>,
    pub events: Vec<Event>,
    pub steps: usize,
    pub halted: bool,
    pub final_state: Vec<f64>,
    pub final_time: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct IntegrateOptions {
    /// Keep every `stride`-th step in the trajectory (the last step is always kept).
    pub stride: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { stride: 1 }
    }
}

fn sample(model: &Model, t: f64, x: &[f64]) -> Sample {
    Sample {
        t,
        x: x.to_vec(),
        h: model.hamiltonian(x).unwrap_or(f64::NAN),
        casimirs: model.casimirs(x).into_iter().map(|c| c.1).collect(),
    }
}

fn halting_event(model: &Model, x: &[f64]) -> Option<(EventKind, String)> {
    let r = x[0];
    if r < COLLISION_R {
        return Some((EventKind::CollisionApproach, format!("r = {r:.3e} < {COLLISION_R:e}")));
    }
    if model.params.space == Space::Hyperbolic && r > 1.0 - BOUNDARY_MARGIN {
        return Some((EventKind::Boundary, format!("r = {r:.17} reached the boundary r -> 1")));
    }
    if let Some(margin) = model.chart_margin(x) {
        if margin < CHART_MARGIN {
            return Some((
                EventKind::ChartSingularity,
                format!("|p_phi| = {} reached min(mu, nu) (chart singularity)", x[3].abs()),
            ));
        }
    }
    None
}

/// When a step fails, checks whether an explicit predictor over the next two steps leaves the chart.
fn boundary_ahead(model: &Model, x: &[f64], dt: f64) -> Option<(EventKind, String)> {
    let f = model.vector_field(x).ok()?;
    let pred: Vec<f64> = x.iter().zip(&f).map(|(a, b)| a + 2.0 * dt * b).collect();
    let r = pred[0];
    if r <= COLLISION_R {
        return Some((EventKind::CollisionApproach, format!("r = {:.3e} heading to 0", x[0])));
    }
    if model.params.space == Space::Hyperbolic {
        if r >= 1.0 - BOUNDARY_MARGIN {
            return Some((EventKind::Boundary, format!("r = {:.17} heading to 1", x[0])));
        }
        // rounding in 1 − r² alone puts the Newton residual above tolerance
        let floor = f64::EPSILON * dt.abs() * inf_norm(&f) / (1.0 - x[0]);
        let scale = inf_norm(x).max(dt.abs() * inf_norm(&f)).max(1.0);
        if floor > 0.1 * NEWTON_TOL * scale {
            return Some((
                EventKind::Boundary,
                format!("r = {:.17}: boundary resolution lost at this step size", x[0]),
            ));
        }
    }
    if model.chart_margin(&pred).is_some_and(|m| m < CHART_MARGIN) {
        return Some((EventKind::ChartSingularity, format!("|p_phi| = {} heading to min(mu, nu)", x[3].abs())));
    }
    None
}

/// Integrates `steps = round(t_end/dt)` fixed steps. `dt` may be negative for backward runs.
pub fn integrate_signed(
    model: &Model,
    x0: &[f64],
    t_end: f64,
    dt: f64,
    opts: IntegrateOptions,
    observers: &mut [&mut dyn Observer],
) -> Result<Trajectory, DynError> {
    model.check_domain(x0)?;
    if dt == 0.0 || !dt.is_finite() {
        return Err(DynError::InvalidParam(format!("dt must be nonzero, got {dt}")));
    }
    let steps = (t_end / dt).round();
    if steps < 0.0 {
        return Err(DynError::InvalidParam(format!("t_end = {t_end} and dt = {dt} point in opposite directions")));
    }
    let steps = steps as usize;
    let stride = opts.stride.max(1);
    let mut traj = Trajectory {
        state_names: model.mode.state_names().iter().map(|s| s.to_string()).collect(),
        casimir_names: model.casimirs(x0).into_iter().map(|c| c.0.to_string()).collect(),
        samples: vec![sample(model, 0.0, x0)],
        events: Vec::new(),
        steps: 0,
        halted: false,
        final_state: x0.to_vec(),
        final_time: 0.0,
    };
    for o in observers.iter_mut() {
        o.observe(0.0, x0, model);
    }
    let mut integ = Integrator::new(model);
    let mut phase = Phase::new(x0.to_vec());
    for k in 1..=steps {
        let t = k as f64 * dt;
        let (next, chart_events) = match integ.advance(&phase, dt) {
            Ok(v) => v,
            Err(e) => match boundary_ahead(model, &phase.x(), dt) {
                Some((kind, message)) => {
                    traj.events.push(Event {
                        t: t - dt,
                        step: k - 1,
                        kind,
                        message: format!("{message} (step failed: {e})"),
                    });
                    traj.halted = true;
                    break;
                }
                None => return Err(e),
            },
        };
        phase = next;
        for (kind, message) in chart_events {
            traj.events.push(Event { t, step: k, kind, message });
        }
        let x = phase.x();
        for o in observers.iter_mut() {
            o.observe(t, &x, model);
        }
        traj.steps = k;
        traj.final_time = t;
        let halt = halting_event(model, &x);
        if k % stride == 0 || k == steps || halt.is_some() {
            traj.samples.push(sample(model, t, &x));
        }
        if let Some((kind, message)) = halt {
            traj.events.push(Event { t, step: k, kind, message });
            traj.halted = true;
            break;
        }
    }
    traj.final_state = phase.x();
    Ok(traj)
}

/// Forward integration to `t_end` with step `dt > 0`.
pub fn integrate(
    model: &Model,
    x0: &[f64],
    t_end: f64,
    dt: f64,
    opts: IntegrateOptions,
    observers: &mut [&mut dyn Observer],
) -> Result<Trajectory, DynError> {
    if !(dt > 0.0) || t_end < 0.0 {
        return Err(DynError::InvalidParam(format!(
            "need dt > 0 and t_end >= 0, got dt = {dt}, t_end = {t_end}"
        )));
    }
    integrate_signed(model, x0, t_end, dt, opts, observers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::hamiltonian::Mode;
    use crate::dynamics::params::SystemParams;
    use crate::potential::PotentialSpec;

    fn geodesic(space: Space) -> Model {
        Model::new(SystemParams::new(2.0, 2.0, 1.0, space, PotentialSpec::Zero).unwrap(), Mode::Geodesic).unwrap()
    }

    #[test]
    fn zero_time_returns_initial_state() {
        let m = geodesic(Space::Sphere);
        let x0 = [0.5, 0.2, 0.0, 0.0];
        let t = integrate(&m, &x0, 0.0, 1e-3, IntegrateOptions::default(), &mut []).unwrap();
        assert_eq!(t.final_state, x0.to_vec());
        assert_eq!(t.samples.len(), 1);
        assert_eq!(t.steps, 0);
    }

    #[test]
    fn geodesic_energy_per_step() {
        // H is quadratic in p_r but not in r, so the one-step energy error is O(dt³), not zero
        let m = geodesic(Space::Sphere);
        let err = |x0: &[f64], dt: f64| {
            let x1 = flow_step(&m, x0, dt).unwrap();
            (m.hamiltonian(&x1).unwrap() - m.hamiltonian(x0).unwrap()).abs()
        };
        let x0 = [1.0, 1.0, 0.0, 0.0];
        let (e1, e2) = (err(&x0, 1e-3), err(&x0, 5e-4));
        assert!(e1 < 1e-9, "{e1}");
        assert!((e1 / e2 - 8.0).abs() < 0.5, "{}", e1 / e2);
        assert!(err(&[0.3, 0.4, 0.0, 0.0], 1e-3) < 1e-12);
        assert!(flow_step(&m, &x0, 0.0).is_err());
    }

    #[test]
    fn geodesic_angle_grows_linearly() {
        // θ = 2 arctan r advances at the constant rate √(2H/m)/R
        let m = geodesic(Space::Sphere);
        let x0 = [0.3, 0.8, 0.0, 0.0];
        let h = m.hamiltonian(&x0).unwrap();
        let rate = (2.0 * h / m.params.m()).sqrt();
        let traj = integrate(&m, &x0, 1.0, 1e-3, IntegrateOptions { stride: 10 }, &mut []).unwrap();
        let theta0 = 2.0 * x0[0].atan();
        for s in &traj.samples {
            let theta = 2.0 * s.x[0].atan();
            assert!((theta - theta0 - rate * s.t).abs() < 1e-6, "t = {}", s.t);
        }
    }

    #[test]
    fn geodesic_passes_the_antipode() {
        let m = geodesic(Space::Sphere);
        let x0 = [5.0, 0.2, 0.0, 0.0];
        let h0 = m.hamiltonian(&x0).unwrap();
        let traj = integrate(&m, &x0, 1.0, 1e-3, IntegrateOptions { stride: 50 }, &mut []).unwrap();
        assert!(traj.events.iter().any(|e| e.kind == EventKind::AntipodalPassage));
        assert!(traj.events.iter().filter(|e| e.kind == EventKind::CoordinateSwitch).count() >= 1);
        assert!(!traj.halted);
        let drift = |traj: &Trajectory| traj.samples.iter().fold(0.0f64, |a, s| a.max((s.h - h0).abs()));
        let half = integrate(&m, &x0, 1.0, 5e-4, IntegrateOptions { stride: 100 }, &mut []).unwrap();
        assert!(drift(&traj) < 1e-5 * h0);
        assert!(drift(&traj) / drift(&half) > 3.5);
        // after the passage r decreases again
        assert!(traj.final_state[1] < 0.0 && traj.final_state[0] < 100.0);
    }

    #[test]
    fn hyperbolic_boundary_halts() {
        let m = geodesic(Space::Hyperbolic);
        let traj = integrate(&m, &[0.9, 50.0, 0.0, 0.0], 100.0, 1e-3, IntegrateOptions::default(), &mut []).unwrap();
        assert!(traj.halted);
        assert_eq!(traj.events.last().unwrap().kind, EventKind::Boundary);
    }

    #[test]
    fn collision_halts() {
        let m = Model::new(
            SystemParams::new(1.0, 1.0, 1.0, Space::Sphere, PotentialSpec::Coulomb { gamma: 1.0 }).unwrap(),
            Mode::Geodesic,
        )
        .unwrap();
        let traj = integrate(&m, &[0.05, -0.1, 0.0, 0.0], 10.0, 1e-5, IntegrateOptions::default(), &mut []);
        match traj {
            Ok(t) => assert_eq!(t.events.last().unwrap().kind, EventKind::CollisionApproach),
            Err(e) => panic!("{e}"),
        }
    }

    #[test]
    fn time_reversal() {
        let m = Model::new(
            SystemParams::new(1.0, 2.0, 1.0, Space::Sphere, PotentialSpec::Coulomb { gamma: 0.5 }).unwrap(),
            Mode::Generic { mu: 1.0, nu: 0.6 },
        )
        .unwrap();
        let x0 = vec![0.8, 0.1, 0.3, 0.2];
        let fwd = integrate_signed(&m, &x0, 2.0, 1e-3, IntegrateOptions::default(), &mut []).unwrap();
        let back = integrate_signed(&m, &fwd.final_state, -2.0, -1e-3, IntegrateOptions::default(), &mut []).unwrap();
        for (a, b) in back.final_state.iter().zip(&x0) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
