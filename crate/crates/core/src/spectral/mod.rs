//! Radial spectral problem on S³: coefficient table, closed-form series and a grid solver.

mod cases;
mod grid;
mod report;
mod series;

use serde::Serialize;
use thiserror::Error;

use crate::repkit::SpinLabel;

pub use cases::{case_coefficients, CaseCoefficients};
pub use grid::{grid_eigensolve, grid_eigensolve_many, grid_levels_raw, RadialProblem, CONVERGENCE_TOL};
pub use report::{compare, ComparisonReport, ComparisonRow};
pub use series::{
    levels_coulomb_twobody, levels_general, levels_inv_square, levels_onebody, levels_oscillator_twobody,
    OneBodyPotential,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("case {case_id} with ell = {ell}: {reason}")]
    InvalidCase { case_id: u8, ell: String, reason: String },
    #[error("closed form needs a = c, case {case_id} has a = {a}, c = {c}")]
    NotSymmetric { case_id: u8, a: f64, c: f64 },
    #[error("{0}")]
    InvalidParam(String),
    #[error("level {index} not converged: {coarse} vs {fine} (relative change {change:e})")]
    NotConverged {
        index: usize,
        coarse: f64,
        fine: f64,
        change: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Method {
    ClosedForm,
    Grid { n_points: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Level {
    pub k: u32,
    #[serde(rename = "E")]
    pub energy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumResult {
    #[serde(rename = "case")]
    pub case_id: Option<u8>,
    pub ell: Option<SpinLabel>,
    pub potential: String,
    pub method: Method,
    pub levels: Vec<Level>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl SpectrumResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spectrum serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,E\n");
        for l in &self.levels {
            out.push_str(&format!("{},{:.16e}\n", l.k, l.energy));
        }
        out
    }
}
