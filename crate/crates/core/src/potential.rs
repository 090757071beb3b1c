//! Central potentials U(r) in the radial chart coordinate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PotentialError {
    #[error("tabulated potential needs at least two samples, got {0}")]
    TooFewSamples(usize),
    #[error("tabulated r and U have different lengths ({r} vs {u})")]
    LengthMismatch { r: usize, u: usize },
    #[error("tabulated r samples must be strictly increasing (index {0})")]
    NotIncreasing(usize),
    #[error("{name} must be nonnegative, got {value}")]
    Negative { name: &'static str, value: f64 },
}

/// Monotone piecewise-cubic interpolant (Fritsch–Carlson slopes), flat outside the sample range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TableSamples", into = "TableSamples")]
pub struct Tabulated {
    r: Vec<f64>,
    u: Vec<f64>,
    slopes: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableSamples {
    r: Vec<f64>,
    u: Vec<f64>,
}

impl TryFrom<TableSamples> for Tabulated {
    type Error = PotentialError;
    fn try_from(s: TableSamples) -> Result<Self, Self::Error> {
        Tabulated::new(s.r, s.u)
    }
}

impl From<Tabulated> for TableSamples {
    fn from(t: Tabulated) -> Self {
        TableSamples { r: t.r, u: t.u }
    }
}

impl Tabulated {
    pub fn new(r: Vec<f64>, u: Vec<f64>) -> Result<Self, PotentialError> {
        if r.len() != u.len() {
            return Err(PotentialError::LengthMismatch { r: r.len(), u: u.len() });
        }
        if r.len() < 2 {
            return Err(PotentialError::TooFewSamples(r.len()));
        }
        if let Some(i) = r.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(PotentialError::NotIncreasing(i + 1));
        }
        let n = r.len();
        let delta: Vec<f64> = (0..n - 1).map(|i| (u[i + 1] - u[i]) / (r[i + 1] - r[i])).collect();
        let mut d = vec![0.0; n];
        d[0] = delta[0];
        d[n - 1] = delta[n - 2];
        for i in 1..n - 1 {
            d[i] = if delta[i - 1] * delta[i] <= 0.0 {
                0.0
            } else {
                (delta[i - 1] + delta[i]) / 2.0
            };
        }
        for i in 0..n - 1 {
            if delta[i] == 0.0 {
                d[i] = 0.0;
                d[i + 1] = 0.0;
                continue;
            }
            let a = d[i] / delta[i];
            let b = d[i + 1] / delta[i];
            let s = a * a + b * b;
            if s > 9.0 {
                let t = 3.0 / s.sqrt();
                d[i] = t * a * delta[i];
                d[i + 1] = t * b * delta[i];
            }
        }
        Ok(Self { r, u, slopes: d })
    }

    pub fn samples(&self) -> (&[f64], &[f64]) {
        (&self.r, &self.u)
    }

    /// (U, U′) at `x`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let n = self.r.len();
        if x <= self.r[0] {
            return (self.u[0], 0.0);
        }
        if x >= self.r[n - 1] {
            return (self.u[n - 1], 0.0);
        }
        let i = self.r.partition_point(|&ri| ri <= x) - 1;
        let h = self.r[i + 1] - self.r[i];
        let t = (x - self.r[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let (y0, y1, d0, d1) = (self.u[i], self.u[i + 1], self.slopes[i], self.slopes[i + 1]);
        let v = (2.0 * t3 - 3.0 * t2 + 1.0) * y0
            + (t3 - 2.0 * t2 + t) * h * d0
            + (-2.0 * t3 + 3.0 * t2) * y1
            + (t3 - t2) * h * d1;
        let dv = ((6.0 * t2 - 6.0 * t) * y0 + (3.0 * t2 - 4.0 * t + 1.0) * h * d0 + (-6.0 * t2 + 6.0 * t) * y1
            + (3.0 * t2 - 2.0 * t) * h * d1)
            / h;
        (v, dv)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PotentialSpec {
    Zero,
    /// U = γ/(2R) · (r − 1/r).
    Coulomb { gamma: f64 },
    /// U = 2ω²R² r² / (1 − r²)².
    Oscillator { omega: f64 },
    /// U = α/r² + β r².
    InvSquarePlusSquare { alpha: f64, beta: f64 },
    Tabulated(Tabulated),
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<(), PotentialError> {
        if let PotentialSpec::InvSquarePlusSquare { alpha, beta } = *self {
            if alpha < 0.0 {
                return Err(PotentialError::Negative { name: "alpha", value: alpha });
            }
            if beta < 0.0 {
                return Err(PotentialError::Negative { name: "beta", value: beta });
            }
        }
        Ok(())
    }

    /// (U(r), U′(r)) for curvature radius `big_r`.
    pub fn eval(&self, r: f64, big_r: f64) -> (f64, f64) {
        match self {
            PotentialSpec::Zero => (0.0, 0.0),
            PotentialSpec::Coulomb { gamma } => {
                let k = gamma / (2.0 * big_r);
                (k * (r - 1.0 / r), k * (1.0 + 1.0 / (r * r)))
            }
            PotentialSpec::Oscillator { omega } => {
                let k = 2.0 * omega * omega * big_r * big_r;
                let d = 1.0 - r * r;
                (k * r * r / (d * d), k * 2.0 * r * (1.0 + r * r) / (d * d * d))
            }
            PotentialSpec::InvSquarePlusSquare { alpha, beta } => {
                (alpha / (r * r) + beta * r * r, -2.0 * alpha / (r * r * r) + 2.0 * beta * r)
            }
            PotentialSpec::Tabulated(t) => t.eval(r),
        }
    }

    pub fn value(&self, r: f64, big_r: f64) -> f64 {
        self.eval(r, big_r).0
    }

    pub fn name(&self) -> &'static str {
        match self {
            PotentialSpec::Zero => "zero",
            PotentialSpec::Coulomb { .. } => "coulomb",
            PotentialSpec::Oscillator { .. } => "oscillator",
            PotentialSpec::InvSquarePlusSquare { .. } => "inv_square_plus_square",
            PotentialSpec::Tabulated(_) => "tabulated",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(p: &PotentialSpec, r: f64) -> f64 {
        let h = 1e-6;
        (p.value(r + h, 1.3) - p.value(r - h, 1.3)) / (2.0 * h)
    }

    #[test]
    fn analytic_derivatives() {
        let list = [
            PotentialSpec::Coulomb { gamma: 1.7 },
            PotentialSpec::Oscillator { omega: 0.8 },
            PotentialSpec::InvSquarePlusSquare { alpha: 0.3, beta: 2.0 },
        ];
        for p in &list {
            for r in [0.2, 0.5, 0.9] {
                let d = p.eval(r, 1.3).1;
                assert!((d - fd(p, r)).abs() < 1e-6 * d.abs().max(1.0), "{p:?} at {r}");
            }
        }
    }

    #[test]
    fn tabulated_reproduces_samples_and_is_monotone() {
        let r = vec![0.0, 1.0, 2.0, 3.0, 4.0];
        let u = vec![0.0, 0.1, 0.2, 5.0, 5.1];
        let t = Tabulated::new(r.clone(), u.clone()).unwrap();
        for (ri, ui) in r.iter().zip(&u) {
            assert!((t.eval(*ri).0 - ui).abs() < 1e-14);
        }
        let mut prev = t.eval(0.0).0;
        for k in 1..=400 {
            let v = t.eval(k as f64 * 0.01).0;
            assert!(v >= prev - 1e-15);
            prev = v;
        }
        assert_eq!(t.eval(-1.0), (0.0, 0.0));
        assert_eq!(t.eval(9.0), (5.1, 0.0));
    }

    #[test]
    fn tabulated_derivative_is_continuous() {
        let t = Tabulated::new(vec![0.5, 1.0, 1.5, 2.5], vec![1.0, 0.2, 0.1, 0.6]).unwrap();
        for knot in [1.0, 1.5] {
            let (a, b) = (t.eval(knot - 1e-9).1, t.eval(knot + 1e-9).1);
            assert!((a - b).abs() < 1e-6);
        }
        let p = PotentialSpec::Tabulated(t);
        assert!((p.eval(1.2, 1.0).1 - fd(&p, 1.2)).abs() < 1e-6);
    }

    #[test]
    fn tabulated_rejects_bad_samples() {
        assert_eq!(Tabulated::new(vec![0.0, 0.0], vec![1.0, 2.0]), Err(PotentialError::NotIncreasing(1)));
        assert!(Tabulated::new(vec![0.0], vec![1.0]).is_err());
        assert!(Tabulated::new(vec![0.0, 1.0], vec![1.0]).is_err());
    }
}
