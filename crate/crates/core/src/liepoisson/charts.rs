use serde::Serialize;

use super::LieError;

/// A point of a six-dimensional dual space, either in p-coordinates or split (u,v) coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DualPoint(pub [f64; 6]);

impl DualPoint {
    /// (u, v) → p with p_i = u_i + v_i, p_{3+i} = u_i − v_i.
    pub fn split_to_p(&self) -> DualPoint {
        let x = &self.0;
        DualPoint([x[0] + x[3], x[1] + x[4], x[2] + x[5], x[0] - x[3], x[1] - x[4], x[2] - x[5]])
    }

    pub fn p_to_split(&self) -> DualPoint {
        let x = &self.0;
        let h = 0.5;
        DualPoint([
            h * (x[0] + x[3]),
            h * (x[1] + x[4]),
            h * (x[2] + x[5]),
            h * (x[0] - x[3]),
            h * (x[1] - x[4]),
            h * (x[2] - x[5]),
        ])
    }

    fn u(&self) -> [f64; 3] {
        [self.0[0], self.0[1], self.0[2]]
    }

    fn v(&self) -> [f64; 3] {
        [self.0[3], self.0[4], self.0[5]]
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Distance below which μ and ν count as equal for the S³ chart.
pub const TRANSVERSALITY_TOL: f64 = 1e-9;

fn check_s3(mu: f64, nu: f64, u: f64) -> Result<(), LieError> {
    if !(mu >= 0.0 && nu >= 0.0) {
        return Err(LieError::NegativeCasimir { mu, nu });
    }
    if (mu - nu).abs() < TRANSVERSALITY_TOL {
        return Err(LieError::NotTransversal { mu, nu });
    }
    let bound = mu.min(nu);
    if u.abs() > bound {
        return Err(LieError::OutsideChart { u, bound });
    }
    Ok(())
}

/// Chart (u, ψ, χ) on the so*(4) orbit |U| = μ, |V| = ν with p₁ = 0, in split coordinates:
/// U = (u, √(μ²−u²) sin ψ, √(μ²−u²) cos ψ), V = (−u, √(ν²−u²) sin χ, √(ν²−u²) cos χ).
pub fn orbit_chart_s3(mu: f64, nu: f64, u: f64, psi: f64, chi: f64) -> Result<DualPoint, LieError> {
    check_s3(mu, nu, u)?;
    let s = (mu * mu - u * u).max(0.0).sqrt();
    let t = (nu * nu - u * u).max(0.0).sqrt();
    Ok(DualPoint([
        u,
        s * psi.sin(),
        s * psi.cos(),
        -u,
        t * chi.sin(),
        t * chi.cos(),
    ]))
}

/// Columns ∂/∂u, ∂/∂ψ, ∂/∂χ of the S³ chart. Requires |u| < min(μ,ν).
pub fn orbit_chart_s3_tangents(mu: f64, nu: f64, u: f64, psi: f64, chi: f64) -> Result<[DualPoint; 3], LieError> {
    check_s3(mu, nu, u)?;
    let s = (mu * mu - u * u).sqrt();
    let t = (nu * nu - u * u).sqrt();
    if s == 0.0 || t == 0.0 {
        return Err(LieError::OutsideChart { u, bound: mu.min(nu) });
    }
    let (sp, cp) = psi.sin_cos();
    let (sc, cc) = chi.sin_cos();
    Ok([
        DualPoint([1.0, -u / s * sp, -u / s * cp, -1.0, -u / t * sc, -u / t * cc]),
        DualPoint([0.0, s * cp, -s * sp, 0.0, 0.0, 0.0]),
        DualPoint([0.0, 0.0, 0.0, 0.0, t * cc, -t * sc]),
    ])
}

/// Kirillov form on the product of spheres |U| = μ, |V| = ν at `x` (split coordinates):
/// ω(a,b) = U·(a_U × b_U)/μ² + V·(a_V × b_V)/ν².
pub fn kirillov_form(x: &DualPoint, a: &DualPoint, b: &DualPoint) -> f64 {
    let (uu, vv) = (x.u(), x.v());
    dot(uu, cross(a.u(), b.u())) / dot(uu, uu) + dot(vv, cross(a.v(), b.v())) / dot(vv, vv)
}

/// Largest deviation of the pulled-back Kirillov form from du∧d(ψ−χ) at a chart point.
pub fn symplectic_form_residual(mu: f64, nu: f64, u: f64, psi: f64, chi: f64) -> Result<f64, LieError> {
    let x = orbit_chart_s3(mu, nu, u, psi, chi)?;
    let [du, dpsi, dchi] = orbit_chart_s3_tangents(mu, nu, u, psi, chi)?;
    // du∧d(ψ−χ) on the coordinate pairs
    let want = [(&du, &dpsi, 1.0), (&du, &dchi, -1.0), (&dpsi, &dchi, 0.0)];
    Ok(want
        .iter()
        .map(|(a, b, w)| (kirillov_form(&x, a, b) - w).abs())
        .fold(0.0, f64::max))
}

/// Coordinates (μ, ν, u, ψ, χ) of a split-coordinate point in the S³ chart.
pub fn orbit_chart_s3_inverse(x: &DualPoint) -> (f64, f64, f64, f64, f64) {
    let (uu, vv) = (x.u(), x.v());
    (
        dot(uu, uu).sqrt(),
        dot(vv, vv).sqrt(),
        uu[0],
        uu[1].atan2(uu[2]),
        vv[1].atan2(vv[2]),
    )
}

/// Rotation by ξ about the first axis applied to both U and V (the stabilizer K acting by Ad*).
pub fn k_action(x: &DualPoint, xi: f64) -> DualPoint {
    let (s, c) = xi.sin_cos();
    let r = |a: f64, b: f64| (a * c + b * s, b * c - a * s);
    let (u2, u3) = r(x.0[1], x.0[2]);
    let (v2, v3) = r(x.0[4], x.0[5]);
    DualPoint([x.0[0], u2, u3, x.0[3], v2, v3])
}

/// Positive root of u² − v² = μ + p₄², uv = ν.
pub fn h3_uv(mu: f64, nu: f64, p4: f64) -> (f64, f64) {
    let a = mu + p4 * p4;
    let u = ((a + (a * a + 4.0 * nu * nu).sqrt()) / 2.0).sqrt();
    (u, nu / u)
}

/// Chart (p₄, ψ, χ) on the so*(1,3) orbit I₁ = μ, I₂ = ν, p₁ = 0, in p-coordinates.
pub fn orbit_chart_h3(mu: f64, nu: f64, p4: f64, psi: f64, chi: f64) -> Result<DualPoint, LieError> {
    if nu == 0.0 {
        return Err(LieError::ZeroNu);
    }
    let (u, v) = h3_uv(mu, nu, p4);
    let (ch, sh) = (psi.cosh(), psi.sinh());
    let (sc, cc) = chi.sin_cos();
    Ok(DualPoint([
        0.0,
        u * ch * cc + v * sh * sc,
        v * sh * cc - u * ch * sc,
        p4,
        v * ch * cc - u * sh * sc,
        -u * sh * cc - v * ch * sc,
    ]))
}

/// ψ and χ recovered from the p-coordinates of an H³ chart point.
pub fn h3_angles(p: &[f64]) -> (f64, f64) {
    let (p2, p3, p5, p6) = (p[1], p[2], p[4], p[5]);
    let psi = 0.25 * (((p2 - p6).powi(2) + (p5 + p3).powi(2)) / ((p2 + p6).powi(2) + (p5 - p3).powi(2))).ln();
    let chi = 0.5 * (((p5 - p3) / (p2 + p6)).atan() - ((p5 + p3) / (p2 - p6)).atan());
    (psi, chi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liepoisson::algebra::LieAlgebraSpec;
    use crate::liepoisson::bracket::numeric_bracket;
    use crate::liepoisson::tables::{casimir_i1, casimir_i2, orbit_quadratics_split};

    #[test]
    fn s3_chart_examples() {
        let x = orbit_chart_s3(2.0, 1.0, 1.0, 0.0, 0.0).unwrap();
        assert_eq!(x.0, [1.0, 0.0, 3f64.sqrt(), -1.0, 0.0, 0.0]);
        let x = orbit_chart_s3(1.0, 2.0, 0.0, std::f64::consts::FRAC_PI_2, 0.0).unwrap();
        assert!((x.0[1] - 1.0).abs() < 1e-15 && x.0[2].abs() < 1e-15);
        assert_eq!(&x.0[3..], &[0.0, 0.0, 2.0]);
        let [qu, qv] = orbit_quadratics_split();
        assert!((qu.eval(&x.0) - 1.0).abs() < 1e-15);
        assert!((qv.eval(&x.0) - 4.0).abs() < 1e-15);
        assert_eq!(x.split_to_p().0[0], 0.0);
    }

    #[test]
    fn s3_chart_rejects_bad_input() {
        assert!(matches!(orbit_chart_s3(1.0, 1.0, 0.0, 0.0, 0.0), Err(LieError::NotTransversal { .. })));
        assert!(matches!(orbit_chart_s3(2.0, 1.0, 1.5, 0.0, 0.0), Err(LieError::OutsideChart { .. })));
    }

    #[test]
    fn split_round_trip() {
        let x = DualPoint([0.1, -0.4, 2.0, 0.3, 0.7, -1.5]);
        let y = x.split_to_p().p_to_split();
        for i in 0..6 {
            assert!((x.0[i] - y.0[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn pullback_is_du_dphi() {
        for &(mu, nu, u, psi, chi) in &[(2.0, 1.0, 0.3, 0.4, -1.2), (0.7, 3.0, -0.5, 2.5, 0.1)] {
            assert!(symplectic_form_residual(mu, nu, u, psi, chi).unwrap() < 1e-12);
        }
    }

    #[test]
    fn k_action_shifts_both_angles() {
        let x = orbit_chart_s3(2.0, 1.3, 0.4, 0.2, 1.0).unwrap();
        let y = k_action(&x, 0.7);
        let z = orbit_chart_s3(2.0, 1.3, 0.4, 0.9, 1.7).unwrap();
        for i in 0..6 {
            assert!((y.0[i] - z.0[i]).abs() < 1e-14);
        }
        let (m0, n0, u0, p0, c0) = orbit_chart_s3_inverse(&x);
        let (m1, n1, u1, p1, c1) = orbit_chart_s3_inverse(&y);
        assert!((m0 - m1).abs() < 1e-14 && (n0 - n1).abs() < 1e-14 && u0 == u1);
        assert!(((p0 - c0) - (p1 - c1)).abs() < 1e-14);
    }

    #[test]
    fn h3_chart_examples() {
        let x = orbit_chart_h3(0.0, 1.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(x.0, [0.0, 1.0, 0.0, 0.0, 1.0, 0.0]);
        let x = orbit_chart_h3(3.0, 2.0, 1.0, 0.3, 1.1).unwrap();
        assert!((casimir_i1().eval(&x.0) - 3.0).abs() < 1e-12);
        assert!((casimir_i2().eval(&x.0) - 2.0).abs() < 1e-12);
        assert!(matches!(orbit_chart_h3(1.0, 0.0, 0.0, 0.0, 0.0), Err(LieError::ZeroNu)));
    }

    #[test]
    fn h3_angles_invert_chart() {
        let x = orbit_chart_h3(1.5, -0.8, 0.4, 0.35, -0.6).unwrap();
        let (psi, chi) = h3_angles(&x.0);
        assert!((psi - 0.35).abs() < 1e-12 && (chi + 0.6).abs() < 1e-12);
    }

    #[test]
    fn h3_angle_brackets() {
        let alg = LieAlgebraSpec::so13();
        let x = orbit_chart_h3(0.8, 1.3, -0.2, 0.25, 0.4).unwrap();
        let p4 = |y: &[f64]| y[3];
        let psi = |y: &[f64]| h3_angles(y).0;
        let chi = |y: &[f64]| h3_angles(y).1;
        assert!((numeric_bracket(&p4, &psi, &alg, &x.0, 1e-5) + 1.0).abs() < 1e-7);
        assert!(numeric_bracket(&p4, &chi, &alg, &x.0, 1e-5).abs() < 1e-7);
        assert!(numeric_bracket(&psi, &chi, &alg, &x.0, 1e-5).abs() < 1e-7);
    }
}
