use std::f64::consts::PI;

use super::hamiltonian::{Mode, Model};
use super::DynError;

/// Radial period of the integrable case from the energy equation, ∮ dr/ṙ.
///
/// With Q(r) = (E − U)/K − ν²/r² = p_r² and ṙ = 2K p_r, the substitution
/// r = (a+b)/2 + (b−a)/2·cos t removes the turning-point singularities:
/// T = ∫₀^π dt / (K(r) √q(r)), q = Q / ((r−a)(b−r)).
pub fn radial_period_quadrature(model: &Model, x0: &[f64]) -> Result<f64, DynError> {
    let Mode::Integrable { .. } = model.mode else {
        return Err(DynError::InvalidMode("radial period quadrature needs integrable mode".into()));
    };
    let p = &model.params;
    let energy = model.hamiltonian(x0)?;
    let nu = x0[3];
    let q_of = |r: f64| {
        let (k, _) = p.kinetic(r);
        (energy - p.potential(r).0) / k - nu * nu / (r * r)
    };
    let (a, b) = turning_points(&q_of, x0[0])?;
    let n = 4000;
    let h = PI / n as f64;
    let mut sum = 0.0;
    for i in 0..n {
        let t = (i as f64 + 0.5) * h;
        let r = 0.5 * (a + b) + 0.5 * (b - a) * t.cos();
        let q = q_of(r) / ((r - a) * (b - r));
        sum += 1.0 / (p.kinetic(r).0 * q.sqrt());
    }
    Ok(sum * h)
}

fn bisect(f: &dyn Fn(f64) -> f64, mut inside: f64, mut outside: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (inside + outside);
        if mid == inside || mid == outside {
            break;
        }
        if f(mid) > 0.0 {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    0.5 * (inside + outside)
}

/// Ends of the allowed interval {Q > 0} that contains (or touches) r0.
fn turning_points(q: &dyn Fn(f64) -> f64, r0: f64) -> Result<(f64, f64), DynError> {
    let none = || DynError::Domain("no classically allowed radial interval near the initial radius".into());
    let mut inside = None;
    if q(r0) > 0.0 {
        inside = Some(r0);
    } else {
        // r0 is a turning point: look for the allowed side
        'probe: for k in (1..=12).rev() {
            let e = 10f64.powi(-k);
            for r in [r0 * (1.0 + e), r0 * (1.0 - e)] {
                if q(r) > 0.0 {
                    inside = Some(r);
                    break 'probe;
                }
            }
        }
    }
    let ri = inside.ok_or_else(none)?;
    let expand = |sign: f64| -> Result<f64, DynError> {
        let mut d = 1e-12 * ri;
        let mut last = ri;
        for _ in 0..200 {
            // inward steps at most halve r, so the inner turning point is not stepped over
            let r = if sign < 0.0 { (ri - d).max(0.5 * last) } else { ri + d };
            if r < 1e-12 * ri {
                return Err(DynError::Domain("radial motion reaches r = 0".into()));
            }
            if q(r) <= 0.0 {
                return Ok(bisect(q, last, r));
            }
            last = r;
            d *= 2.0;
        }
        Err(DynError::Domain("radial motion is unbounded".into()))
    };
    Ok((expand(-1.0)?, expand(1.0)?))
}
