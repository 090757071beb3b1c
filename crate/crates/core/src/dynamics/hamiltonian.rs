use serde::{Deserialize, Serialize};

use super::coeffs::coefficients;
use super::params::{Space, SystemParams};
use super::DynError;
use crate::liepoisson::{lie_poisson_vector_field, LieAlgebraSpec, TRANSVERSALITY_TOL};

/// Which reduced Hamilton function is in use.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Mode {
    /// Generic orbit: sphere with μ ≠ ν, or hyperbolic with ν ≠ 0. State (r, p_r, φ, p_φ).
    Generic { mu: f64, nu: f64 },
    /// Sphere with μ = ν: motion on an so*(3) orbit. State (r, p_r, p₃, p₄, p₅).
    EqualCasimir,
    /// Hyperbolic with ν = 0: motion on an so*(1,2) orbit. State (r, p_r, p₃, p₄, p₅).
    NuZero,
    /// Sphere with μ = 0: H = K(p_r² + ν²/r²) + U, with φ cyclic and p_φ = ν.
    Integrable { nu: f64 },
    /// Motion along a common geodesic: H = K p_r² + U. State (r, p_r, φ, p_φ) with φ, p_φ inert.
    Geodesic,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Generic { .. } => "generic",
            Mode::EqualCasimir => "equal_casimir",
            Mode::NuZero => "nu_zero",
            Mode::Integrable { .. } => "integrable",
            Mode::Geodesic => "geodesic",
        }
    }

    pub fn is_orbit(&self) -> bool {
        matches!(self, Mode::EqualCasimir | Mode::NuZero)
    }

    pub fn dim(&self) -> usize {
        if self.is_orbit() {
            5
        } else {
            4
        }
    }

    pub fn state_names(&self) -> &'static [&'static str] {
        if self.is_orbit() {
            &["r", "p_r", "p3", "p4", "p5"]
        } else {
            &["r", "p_r", "phi", "p_phi"]
        }
    }
}

/// Canonical reduced state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedState {
    pub r: f64,
    pub p_r: f64,
    pub phi: f64,
    pub p_phi: f64,
}

impl ReducedState {
    pub fn to_vec(self) -> Vec<f64> {
        vec![self.r, self.p_r, self.phi, self.p_phi]
    }
}

/// Reduced state with Lie–Poisson orbit variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitState {
    pub r: f64,
    pub p_r: f64,
    pub p3: f64,
    pub p4: f64,
    pub p5: f64,
}

impl OrbitState {
    pub fn to_vec(self) -> Vec<f64> {
        vec![self.r, self.p_r, self.p3, self.p4, self.p5]
    }
}

/// A reduced Hamiltonian system: parameters plus the Casimir stratum.
#[derive(Debug, Clone)]
pub struct Model {
    pub params: SystemParams,
    pub mode: Mode,
    algebra: Option<LieAlgebraSpec>,
}

impl Model {
    pub fn new(params: SystemParams, mode: Mode) -> Result<Self, DynError> {
        let space = params.space;
        let bad = |msg: String| Err(DynError::InvalidMode(msg));
        match (mode, space) {
            (Mode::Generic { mu, nu }, Space::Sphere) => {
                if !(mu >= 0.0 && nu >= 0.0) {
                    return bad(format!("mu and nu must be nonnegative, got mu = {mu}, nu = {nu}"));
                }
                if (mu - nu).abs() < TRANSVERSALITY_TOL {
                    return bad(format!(
                        "mu = nu = {mu}: the generic sphere chart needs mu != nu (transversality); use mode equal_casimir for motion on S2"
                    ));
                }
            }
            (Mode::Generic { nu, .. }, Space::Hyperbolic) => {
                if nu == 0.0 {
                    return bad("the hyperbolic generic chart needs nu != 0; use mode nu_zero".into());
                }
            }
            (Mode::EqualCasimir, Space::Hyperbolic) => return bad("equal_casimir is a sphere mode; use nu_zero".into()),
            (Mode::NuZero, Space::Sphere) => return bad("nu_zero is a hyperbolic mode; use equal_casimir".into()),
            (Mode::Integrable { .. }, Space::Hyperbolic) => return bad("integrable mode is defined on the sphere".into()),
            _ => {}
        }
        let algebra = match mode {
            Mode::EqualCasimir => Some(LieAlgebraSpec::so3()),
            Mode::NuZero => Some(LieAlgebraSpec::so12()),
            _ => None,
        };
        Ok(Self { params, mode, algebra })
    }

    pub fn dim(&self) -> usize {
        self.mode.dim()
    }

    /// Checks that `x` lies in the chart domain.
    pub fn check_domain(&self, x: &[f64]) -> Result<(), DynError> {
        if x.len() != self.dim() {
            return Err(DynError::Domain(format!(
                "state has {} components, mode {} needs {}",
                x.len(),
                self.mode.name(),
                self.dim()
            )));
        }
        let r = x[0];
        match self.params.space {
            Space::Sphere if !(r > 0.0) => {
                return Err(DynError::Domain(format!("sphere chart needs r > 0, got {r}")))
            }
            Space::Hyperbolic if !(r > 0.0 && r < 1.0) => {
                return Err(DynError::Domain(format!("hyperbolic chart needs 0 < r < 1, got {r}")))
            }
            _ => {}
        }
        if let (Mode::Generic { mu, nu }, Space::Sphere) = (self.mode, self.params.space) {
            let bound = mu.min(nu);
            if x[3].abs() > bound {
                return Err(DynError::Domain(format!(
                    "|p_phi| <= min(mu, nu) violated: |p_phi| = {}, min(mu, nu) = {bound}",
                    x[3].abs()
                )));
            }
        }
        Ok(())
    }

    /// H and ∇H at `x`.
    pub fn eval(&self, x: &[f64]) -> Result<(f64, Vec<f64>), DynError> {
        self.check_domain(x)?;
        let p = &self.params;
        let (r, pr) = (x[0], x[1]);
        let (k, dk) = p.kinetic(r);
        let (u, du) = p.potential(r);
        let a = p.a();
        let mut g = vec![0.0; self.dim()];
        g[1] = 2.0 * k * pr;
        let mut h = k * pr * pr + u;
        g[0] = dk * pr * pr + du;
        match self.mode {
            Mode::Geodesic => {}
            Mode::Integrable { .. } => {
                let q = x[3];
                let r2 = r * r;
                h += k * q * q / r2;
                g[0] += dk * q * q / r2 - 2.0 * k * q * q / (r2 * r);
                g[3] = 2.0 * k * q / r2;
            }
            Mode::Generic { mu, nu } => {
                let c = coefficients(r, p)?;
                let (phi, q) = (x[2], x[3]);
                h += 4.0 * q * q / a;
                g[3] += 8.0 * q / a;
                match p.space {
                    Space::Sphere => {
                        let (sp, cp) = phi.sin_cos();
                        let s0 = mu * mu + nu * nu - 2.0 * q * q;
                        let qq = ((mu * mu - q * q) * (nu * nu - q * q)).max(0.0).sqrt();
                        let lin_a = 0.5 * (s0 + 2.0 * qq * cp);
                        let lin_c = 0.5 * (s0 - 2.0 * qq * cp);
                        let lin_b = -2.0 * qq * sp;
                        h += c.a * lin_a + c.c * lin_c + c.b * lin_b;
                        g[0] += c.da * lin_a + c.dc * lin_c + c.db * lin_b;
                        g[2] = -(c.a - c.c) * qq * sp - 2.0 * c.b * qq * cp;
                        if qq > 0.0 {
                            let dq = -q * s0 / qq;
                            g[3] += 0.5 * c.a * (-4.0 * q + 2.0 * dq * cp) + 0.5 * c.c * (-4.0 * q - 2.0 * dq * cp)
                                - 2.0 * c.b * dq * sp;
                        } else {
                            g[3] = f64::NAN;
                        }
                    }
                    Space::Hyperbolic => {
                        let (sh, ch) = (phi.sinh(), phi.cosh());
                        let w = mu / 4.0 + q * q;
                        let s = (w * w + nu * nu / 4.0).sqrt();
                        let ds = 2.0 * q * w / s;
                        let base = mu / 2.0 + 2.0 * q * q;
                        let lin_a = 0.5 * (base + 2.0 * s * ch);
                        let lin_c = -0.5 * (base - 2.0 * s * ch);
                        let lin_b = -2.0 * s * sh;
                        h += c.a * lin_a + c.c * lin_c + c.b * lin_b;
                        g[0] += c.da * lin_a + c.dc * lin_c + c.db * lin_b;
                        g[2] = (c.a + c.c) * s * sh - 2.0 * c.b * s * ch;
                        g[3] += 0.5 * c.a * (4.0 * q + 2.0 * ds * ch) - 0.5 * c.c * (4.0 * q - 2.0 * ds * ch)
                            - 2.0 * c.b * ds * sh;
                    }
                }
            }
            Mode::EqualCasimir | Mode::NuZero => {
                let c = coefficients(r, p)?;
                let (p3, p4, p5) = (x[2], x[3], x[4]);
                // cross term −B p₃p₅ on the sphere, +B p₃p₅ on the hyperboloid
                let sb = if self.mode == Mode::EqualCasimir { -1.0 } else { 1.0 };
                h += p4 * p4 / a + 0.5 * c.a * p3 * p3 + 0.5 * c.c * p5 * p5 + sb * c.b * p3 * p5;
                g[0] += 0.5 * c.da * p3 * p3 + 0.5 * c.dc * p5 * p5 + sb * c.db * p3 * p5;
                g[2] = c.a * p3 + sb * c.b * p5;
                g[3] = 2.0 * p4 / a;
                g[4] = c.c * p5 + sb * c.b * p3;
            }
        }
        Ok((h, g))
    }

    pub fn hamiltonian(&self, x: &[f64]) -> Result<f64, DynError> {
        self.eval(x).map(|(h, _)| h)
    }

    /// Converts ∇H into the vector field: canonical pairs (r,p_r), (φ,p_φ), or Lie–Poisson for orbit variables.
    pub fn vector_field_from_gradient(&self, x: &[f64], g: &[f64]) -> Vec<f64> {
        let mut f = vec![0.0; self.dim()];
        f[0] = g[1];
        f[1] = -g[0];
        match &self.algebra {
            Some(alg) => {
                let w = lie_poisson_vector_field(alg, &x[2..5], &g[2..5]);
                f[2..5].copy_from_slice(&w);
            }
            None => {
                f[2] = g[3];
                f[3] = -g[2];
            }
        }
        f
    }

    pub fn vector_field(&self, x: &[f64]) -> Result<Vec<f64>, DynError> {
        let (_, g) = self.eval(x)?;
        Ok(self.vector_field_from_gradient(x, &g))
    }

    /// Conserved quantities other than H that the mode carries in its state.
    pub fn casimirs(&self, x: &[f64]) -> Vec<(&'static str, f64)> {
        match self.mode {
            Mode::EqualCasimir => vec![("p3^2+p4^2+p5^2", x[2] * x[2] + x[3] * x[3] + x[4] * x[4])],
            Mode::NuZero => vec![("p3^2-p4^2-p5^2", x[2] * x[2] - x[3] * x[3] - x[4] * x[4])],
            Mode::Integrable { .. } => vec![("p_phi", x[3])],
            _ => vec![],
        }
    }

    /// Distance from |p_φ| to the chart singularity min(μ,ν); `None` when the chart has none.
    pub fn chart_margin(&self, x: &[f64]) -> Option<f64> {
        match (self.mode, self.params.space) {
            (Mode::Generic { mu, nu }, Space::Sphere) => Some(mu.min(nu) - x[3].abs()),
            _ => None,
        }
    }
}
