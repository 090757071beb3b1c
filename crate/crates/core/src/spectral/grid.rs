use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;
use serde::Serialize;

use super::cases::CaseCoefficients;
use super::{Level, Method, SpectralError, SpectrumResult};
use crate::potential::PotentialSpec;

/// Relative change between the two grids above which a solve is rejected.
pub const CONVERGENCE_TOL: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialProblem {
    pub coeffs: CaseCoefficients,
    pub potential: PotentialSpec,
    pub m: f64,
    pub radius: f64,
}

impl RadialProblem {
    pub fn new(coeffs: CaseCoefficients, potential: PotentialSpec, m: f64, radius: f64) -> Result<Self, SpectralError> {
        if !(m > 0.0 && m.is_finite()) || !(radius > 0.0 && radius.is_finite()) {
            return Err(SpectralError::InvalidParam(format!("need m, R > 0, got m = {m}, R = {radius}")));
        }
        potential
            .validate()
            .map_err(|e| SpectralError::InvalidParam(e.to_string()))?;
        Ok(Self {
            coeffs,
            potential,
            m,
            radius,
        })
    }

    /// μ = 1/(2mR²).
    pub fn mu(&self) -> f64 {
        1.0 / (2.0 * self.m * self.radius * self.radius)
    }

    /// Upper end of the θ interval. The oscillator wall at r = 1 sits at θ = π/2.
    fn theta_max(&self) -> f64 {
        match self.potential {
            PotentialSpec::Oscillator { .. } => FRAC_PI_2,
            _ => PI,
        }
    }

    /// Centrifugal term plus potential at r.
    fn v(&self, r: f64) -> f64 {
        let c = &self.coeffs;
        (c.a / (r * r) + c.b + c.c * r * r) / (self.m * self.radius * self.radius)
            + self.potential.value(r, self.radius)
    }
}

/// Symmetric tridiagonal matrix stored as diagonal and constant off-diagonal.
struct Tridiagonal {
    diag: Vec<f64>,
    off: f64,
}

impl Tridiagonal {
    /// With g = sin θ · f the radial operator becomes −μ g″ + (V − μ) g on θ = 2 arctan r.
    fn assemble(p: &RadialProblem, n: usize) -> Result<Self, SpectralError> {
        let mu = p.mu();
        let h = p.theta_max() / (n + 1) as f64;
        let k = mu / (h * h);
        let diag = (1..=n)
            .map(|i| {
                let r = (0.5 * i as f64 * h).tan();
                let v = p.v(r);
                if v.is_finite() {
                    Ok(2.0 * k + v - mu)
                } else {
                    Err(SpectralError::InvalidParam(format!("potential is not finite at r = {r}")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { diag, off: -k })
    }

    /// Number of eigenvalues below x (Sturm sequence via the LDLᵀ pivots).
    fn count_below(&self, x: f64) -> usize {
        let b2 = self.off * self.off;
        let mut count = 0;
        let mut d = 1.0;
        for (i, &a) in self.diag.iter().enumerate() {
            d = if i == 0 { a - x } else { a - x - b2 / d };
            if d == 0.0 {
                d = -f64::EPSILON * (a.abs() + x.abs()).max(f64::MIN_POSITIVE);
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The j-th smallest eigenvalue (0-based) by bisection.
    fn eigenvalue(&self, j: usize) -> f64 {
        let b = 2.0 * self.off.abs();
        let mut lo = self.diag.iter().fold(f64::INFINITY, |m, &a| m.min(a - b));
        let mut hi = self.diag.iter().fold(f64::NEG_INFINITY, |m, &a| m.max(a + b));
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// Lowest `count` eigenvalues on a single grid of n interior points.
pub fn grid_levels_raw(p: &RadialProblem, count: usize, n: usize) -> Result<Vec<f64>, SpectralError> {
    if count == 0 || n < count + 2 {
        return Err(SpectralError::InvalidParam(format!(
            "need count >= 1 and n_points > count + 1, got count = {count}, n_points = {n}"
        )));
    }
    let t = Tridiagonal::assemble(p, n)?;
    Ok((0..count).map(|j| t.eigenvalue(j)).collect())
}

/// Grid eigenvalues on n and 2n+1 points (step exactly halved), Richardson-extrapolated.
pub fn grid_eigensolve(p: &RadialProblem, count: usize, n_points: usize) -> Result<SpectrumResult, SpectralError> {
    let (coarse, fine) = rayon::join(
        || grid_levels_raw(p, count, n_points),
        || grid_levels_raw(p, count, 2 * n_points + 1),
    );
    let (coarse, fine) = (coarse?, fine?);
    let scale = p.mu();
    let mut levels = Vec::with_capacity(count);
    for (j, (c, f)) in coarse.iter().zip(&fine).enumerate() {
        let change = (f - c).abs() / f.abs().max(scale);
        if change > CONVERGENCE_TOL {
            return Err(SpectralError::NotConverged {
                index: j,
                coarse: *c,
                fine: *f,
                change,
            });
        }
        levels.push(Level {
            k: j as u32,
            energy: (4.0 * f - c) / 3.0,
        });
    }
    Ok(SpectrumResult {
        case_id: Some(p.coeffs.case_id),
        ell: Some(p.coeffs.ell),
        potential: p.potential.name().to_string(),
        method: Method::Grid { n_points },
        levels,
        warnings: Vec::new(),
    })
}

/// Independent problems solved in parallel.
pub fn grid_eigensolve_many(
    problems: &[RadialProblem],
    count: usize,
    n_points: usize,
) -> Vec<Result<SpectrumResult, SpectralError>> {
    problems.par_iter().map(|p| grid_eigensolve(p, count, n_points)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repkit::SpinLabel;
    use crate::spectral::cases::case_coefficients;
    use crate::spectral::series::*;

    fn problem(case: u8, l: u32, pot: PotentialSpec, m: f64, r: f64) -> RadialProblem {
        RadialProblem::new(case_coefficients(case, SpinLabel::integer(l)).unwrap(), pot, m, r).unwrap()
    }

    fn assert_close(grid: &SpectrumResult, exact: &SpectrumResult, tol: f64) {
        for (g, e) in grid.levels.iter().zip(&exact.levels) {
            let rel = (g.energy - e.energy).abs() / e.energy.abs().max(1e-300);
            assert!(rel < tol, "level {}: grid {} vs exact {} (rel {rel:e})", e.k, g.energy, e.energy);
        }
    }

    #[test]
    fn free_spectrum() {
        let p = problem(1, 0, PotentialSpec::Zero, 1.0, 1.0);
        let g = grid_eigensolve(&p, 3, 2000).unwrap();
        for l in &g.levels[1..] {
            let k = f64::from(l.k);
            assert!((l.energy - k * (k + 2.0) / 2.0).abs() < 1e-6 * k * (k + 2.0) / 2.0);
        }
        assert!(g.levels[0].energy.abs() < 1e-8);
    }

    #[test]
    fn coulomb_ground_state() {
        let p = problem(1, 0, PotentialSpec::Coulomb { gamma: 1.0 }, 1.0, 1.0);
        let g = grid_eigensolve(&p, 1, 4000).unwrap();
        assert!((g.levels[0].energy + 0.5).abs() < 1e-6 * 0.5);
    }

    #[test]
    fn second_order_convergence() {
        let p = problem(7, 1, PotentialSpec::Coulomb { gamma: 1.0 }, 1.0, 1.0);
        let exact = levels_coulomb_twobody(&p.coeffs, 1.0, 1.0, 1.0, 1).unwrap().levels[0].energy;
        let e1 = grid_levels_raw(&p, 1, 399).unwrap()[0] - exact;
        let e2 = grid_levels_raw(&p, 1, 799).unwrap()[0] - exact;
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.3, "{ratio}");
    }

    #[test]
    fn inv_square_mapping() {
        let pot = PotentialSpec::InvSquarePlusSquare { alpha: 1.0, beta: 1.0 };
        let p = problem(1, 0, pot.clone(), 1.0, 1.0);
        let exact = levels_general(1.0, 1.0, 1.0, 1.0, 3).unwrap();
        assert_close(&grid_eigensolve(&p, 3, 4000).unwrap(), &exact, 1e-6);
        let p = problem(2, 2, pot, 0.7, 1.4);
        let exact = levels_inv_square(&p.coeffs, 1.0, 1.0, 0.7, 1.4, 3).unwrap();
        assert_close(&grid_eigensolve(&p, 3, 4000).unwrap(), &exact, 1e-6);
    }

    #[test]
    fn general_series_index_starts_at_zero() {
        let pot = PotentialSpec::InvSquarePlusSquare { alpha: 1.0, beta: 2.0 };
        let p = problem(1, 0, pot, 1.0, 1.0);
        let exact = levels_general(1.0, 2.0, 1.0, 1.0, 2).unwrap();
        assert_eq!(exact.levels[0].k, 0);
        assert_close(&grid_eigensolve(&p, 2, 4000).unwrap(), &exact, 1e-6);
    }

    #[test]
    fn oscillator_factor_follows_one_particle_series() {
        // at m ≠ 1 the factor √(1 + 1/(4ω²R⁴m)) and √(1 + 1/(4R⁴m²)) differ; the grid decides
        let (m, r, omega) = (2.0, 1.0, 0.5);
        let p = problem(1, 1, PotentialSpec::Oscillator { omega }, m, r);
        let exact = levels_oscillator_twobody(&p.coeffs, omega, m, r, 3).unwrap();
        assert_close(&grid_eigensolve(&p, 3, 4000).unwrap(), &exact, 1e-6);
    }

    #[test]
    fn oscillator_zero_frequency_is_the_hemisphere() {
        let p = problem(1, 0, PotentialSpec::Oscillator { omega: 0.0 }, 1.0, 1.0);
        let g = grid_eigensolve(&p, 3, 4000).unwrap();
        for l in &g.levels {
            let n = 2.0 * f64::from(l.k) + 2.0;
            assert!((l.energy - (n * n - 1.0) / 2.0).abs() < 1e-6 * l.energy);
        }
    }

    #[test]
    fn sturm_count_matches_eigenvalues() {
        let p = problem(1, 0, PotentialSpec::Zero, 1.0, 1.0);
        let t = Tridiagonal::assemble(&p, 50).unwrap();
        let e: Vec<f64> = (0..5).map(|j| t.eigenvalue(j)).collect();
        for (j, x) in e.iter().enumerate() {
            assert_eq!(t.count_below(x - 1e-9), j);
            assert_eq!(t.count_below(x + 1e-9), j + 1);
        }
    }

    #[test]
    fn bad_inputs() {
        let c = case_coefficients(1, SpinLabel::ZERO).unwrap();
        assert!(RadialProblem::new(c, PotentialSpec::Zero, 0.0, 1.0).is_err());
        let p = problem(1, 0, PotentialSpec::Zero, 1.0, 1.0);
        assert!(grid_eigensolve(&p, 0, 100).is_err());
        assert!(grid_eigensolve(&p, 5, 3).is_err());
    }
}
