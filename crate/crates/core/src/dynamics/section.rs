use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use super::hamiltonian::Model;
use super::integrator::{Observer, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionKind {
    /// φ mod 2π = value.
    Phi,
    /// p_φ = value.
    PPhi,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub kind: SectionKind,
    pub value: f64,
    pub direction: Direction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectionPoint {
    pub t: f64,
    pub r: f64,
    pub p_r: f64,
}

impl Section {
    /// Crossing between two consecutive canonical states, linearly interpolated.
    pub fn crossing(&self, (t0, x0): (f64, &[f64]), (t1, x1): (f64, &[f64])) -> Option<SectionPoint> {
        let (a, b, target) = match self.kind {
            SectionKind::PPhi => {
                let (a, b) = (x0[3] - self.value, x1[3] - self.value);
                if a == b || (a < 0.0) == (b < 0.0) {
                    return None;
                }
                (a, b, 0.0)
            }
            SectionKind::Phi => {
                let (a, b) = (x0[2] - self.value, x1[2] - self.value);
                let (ka, kb) = ((a / TAU).floor(), (b / TAU).floor());
                if ka == kb {
                    return None;
                }
                (a, b, ka.max(kb) * TAU)
            }
        };
        let increasing = b > a;
        match self.direction {
            Direction::Increasing if !increasing => return None,
            Direction::Decreasing if increasing => return None,
            _ => {}
        }
        let lam = (target - a) / (b - a);
        Some(SectionPoint {
            t: t0 + lam * (t1 - t0),
            r: x0[0] + lam * (x1[0] - x0[0]),
            p_r: x0[1] + lam * (x1[1] - x0[1]),
        })
    }
}

/// Crossings of a canonical-mode trajectory through `section`, in time order.
pub fn poincare_section(traj: &Trajectory, section: &Section) -> Vec<SectionPoint> {
    if traj.state_names.len() != 4 {
        return Vec::new();
    }
    traj.samples
        .windows(2)
        .filter_map(|w| section.crossing((w[0].t, &w[0].x), (w[1].t, &w[1].x)))
        .collect()
}

/// Collects section crossings at every integrator step, independent of output stride.
#[derive(Debug, Clone)]
pub struct SectionObserver {
    pub section: Section,
    pub points: Vec<SectionPoint>,
    prev: Option<(f64, Vec<f64>)>,
}

impl SectionObserver {
    pub fn new(section: Section) -> Self {
        Self {
            section,
            points: Vec::new(),
            prev: None,
        }
    }
}

impl Observer for SectionObserver {
    fn observe(&mut self, t: f64, x: &[f64], model: &Model) {
        if model.mode.is_orbit() {
            return;
        }
        if let Some((t0, x0)) = &self.prev {
            if let Some(p) = self.section.crossing((*t0, x0), (t, x)) {
                self.points.push(p);
            }
        }
        self.prev = Some((t, x.to_vec()));
    }
}

/// Times where p_r changes sign from + to − (radial maxima), linearly interpolated.
#[derive(Debug, Clone, Default)]
pub struct ApocenterObserver {
    pub times: Vec<f64>,
    prev: Option<(f64, f64)>,
}

impl Observer for ApocenterObserver {
    fn observe(&mut self, t: f64, x: &[f64], _model: &Model) {
        let pr = x[1];
        if let Some((t0, p0)) = self.prev {
            if p0 > 0.0 && pr <= 0.0 {
                self.times.push(t0 + p0 / (p0 - pr) * (t - t0));
            }
        }
        self.prev = Some((t, pr));
    }
}

impl ApocenterObserver {
    /// Mean spacing between successive maxima.
    pub fn period(&self) -> Option<f64> {
        let n = self.times.len();
        (n >= 2).then(|| (self.times[n - 1] - self.times[0]) / (n - 1) as f64)
    }
}
