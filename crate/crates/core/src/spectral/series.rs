use serde::{Deserialize, Serialize};

use super::cases::CaseCoefficients;
use super::{Level, Method, SpectralError, SpectrumResult};

fn check_mass_radius(m: f64, big_r: f64) -> Result<(), SpectralError> {
    if !(m > 0.0 && m.is_finite()) || !(big_r > 0.0 && big_r.is_finite()) {
        return Err(SpectralError::InvalidParam(format!("need m, R > 0, got m = {m}, R = {big_r}")));
    }
    Ok(())
}

fn closed_form(label: &str, k0: u32, count: usize, f: impl Fn(f64) -> f64) -> SpectrumResult {
    SpectrumResult {
        case_id: None,
        ell: None,
        potential: label.to_string(),
        method: Method::ClosedForm,
        levels: (0..count as u32)
            .map(|i| {
                let k = k0 + i;
                Level { k, energy: f(f64::from(k)) }
            })
            .collect(),
        warnings: Vec::new(),
    }
}

/// Levels of −(1/(2mR²))Δ_r f + (η/r² + ν r²) f = E f, k = 0, 1, …
pub fn levels_general(eta: f64, nu: f64, m: f64, big_r: f64, count: usize) -> Result<SpectrumResult, SpectralError> {
    check_mass_radius(m, big_r)?;
    if eta < 0.0 || nu < 0.0 {
        return Err(SpectralError::InvalidParam(format!("eta and nu must be >= 0, got {eta}, {nu}")));
    }
    let mu = 1.0 / (2.0 * m * big_r * big_r);
    let se = (1.0 / 16.0 + eta / mu).sqrt();
    let sn = (1.0 / 16.0 + nu / mu).sqrt();
    let mut res = closed_form("inv_square_plus_square", 0, count, |k| {
        mu * (k * (k + 1.0) - 5.0 / 8.0 + (2.0 * k + 1.0) * (se + sn) + 2.0 * se * sn)
    });
    if eta == 0.0 || nu == 0.0 {
        res.warnings
            .push("eta or nu is 0: formal limit of the Friedrichs-extension series".to_string());
    }
    Ok(res)
}

/// Two-body levels for U = α/r² + β r²: the centrifugal term is folded into η, ν and a constant shift.
pub fn levels_inv_square(
    coeffs: &CaseCoefficients,
    alpha: f64,
    beta: f64,
    m: f64,
    big_r: f64,
    count: usize,
) -> Result<SpectrumResult, SpectralError> {
    check_mass_radius(m, big_r)?;
    let s = 1.0 / (m * big_r * big_r);
    let mut res = levels_general(coeffs.a * s + alpha, coeffs.c * s + beta, m, big_r, count)?;
    for l in &mut res.levels {
        l.energy += coeffs.b * s;
    }
    res.case_id = Some(coeffs.case_id);
    res.ell = Some(coeffs.ell);
    Ok(res)
}

fn require_symmetric(coeffs: &CaseCoefficients) -> Result<(), SpectralError> {
    if !coeffs.is_symmetric() {
        return Err(SpectralError::NotSymmetric {
            case_id: coeffs.case_id,
            a: coeffs.a,
            c: coeffs.c,
        });
    }
    Ok(())
}

/// Two-body Coulomb series, k = 1, 2, … (cases with a = c).
pub fn levels_coulomb_twobody(
    coeffs: &CaseCoefficients,
    gamma: f64,
    m: f64,
    big_r: f64,
    count: usize,
) -> Result<SpectrumResult, SpectralError> {
    check_mass_radius(m, big_r)?;
    require_symmetric(coeffs)?;
    let (b, c) = (coeffs.b, coeffs.c);
    let s = (1.0 + 32.0 * c).sqrt();
    let mr2 = m * big_r * big_r;
    let mut res = closed_form("coulomb", 1, count, |k| {
        (0.5 * (k * k - k + 1.0) - 0.75 + 2.0 * c + b + (2.0 * k - 1.0) / 4.0 * s) / mr2
            - 2.0 * m * gamma * gamma / (s + 2.0 * k - 1.0).powi(2)
    });
    res.case_id = Some(coeffs.case_id);
    res.ell = Some(coeffs.ell);
    Ok(res)
}

/// Two-body oscillator series, k = 0, 1, … (cases with a = c).
///
/// The last factor is √(ω² + 1/(4R⁴m)), the form that follows from the one-particle series.
pub fn levels_oscillator_twobody(
    coeffs: &CaseCoefficients,
    omega: f64,
    m: f64,
    big_r: f64,
    count: usize,
) -> Result<SpectrumResult, SpectralError> {
    check_mass_radius(m, big_r)?;
    require_symmetric(coeffs)?;
    let (b, c) = (coeffs.b, coeffs.c);
    let s = (1.0 + 32.0 * c).sqrt();
    let r2 = big_r * big_r;
    let freq = (omega * omega + 1.0 / (4.0 * r2 * r2 * m)).sqrt();
    let mut res = closed_form("oscillator", 0, count, |k| {
        let n = 4.0 * k + 2.0 + s;
        (n * n - 16.0 * c + 8.0 * b - 3.0) / (8.0 * m * r2) + n / (2.0 * m.sqrt()) * freq
    });
    res.case_id = Some(coeffs.case_id);
    res.ell = Some(coeffs.ell);
    Ok(res)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OneBodyPotential {
    Coulomb { gamma: f64 },
    Oscillator { omega: f64 },
}

/// One-particle radial series with angular momentum l.
pub fn levels_onebody(
    potential: OneBodyPotential,
    l: u32,
    m: f64,
    big_r: f64,
    count: usize,
) -> Result<SpectrumResult, SpectralError> {
    check_mass_radius(m, big_r)?;
    let mr2 = m * big_r * big_r;
    let lf = f64::from(l);
    let mut res = match potential {
        OneBodyPotential::Coulomb { gamma } => closed_form("coulomb", 1, count, |k| {
            let n = k + lf;
            -0.5 / mr2 + n * n / (2.0 * mr2) - m * gamma * gamma / (2.0 * n * n)
        }),
        OneBodyPotential::Oscillator { omega } => {
            let r2 = big_r * big_r;
            let freq = (omega * omega + 1.0 / (4.0 * r2 * r2 * m)).sqrt();
            closed_form("oscillator", 0, count, |k| {
                let n = 2.0 * k + lf + 1.5;
                -(0.75 - n * n) / (2.0 * mr2) + n / m.sqrt() * freq
            })
        }
    };
    res.case_id = Some(1);
    res.ell = Some(crate::repkit::SpinLabel::integer(l));
    Ok(res)
}
