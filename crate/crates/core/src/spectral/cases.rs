use serde::Serialize;

use super::SpectralError;
use crate::repkit::SpinLabel;

/// (a, b, c) of the centrifugal term (a/r² + b + c r²)/(mR²) for one eigenvector series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CaseCoefficients {
    pub case_id: u8,
    pub ell: SpinLabel,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Cases 3 to 8 exist only when both particle masses equal 2m.
    pub equal_masses_required: bool,
}

impl CaseCoefficients {
    /// Cases 1, 2, 7, 8 have a = c, which is what the Coulomb and oscillator series need.
    pub fn is_symmetric(&self) -> bool {
        self.a == self.c
    }

    /// Coefficients with a = c = l(l+1)/8, b = l(l+1)/4: the one-particle centrifugal term.
    pub fn one_particle(l: u32) -> Self {
        case_coefficients(1, SpinLabel::integer(l)).expect("case 1 accepts every integer l")
    }
}

pub fn case_coefficients(case_id: u8, ell: SpinLabel) -> Result<CaseCoefficients, SpectralError> {
    let l = ell.value();
    let bad = |why: &str| SpectralError::InvalidCase {
        case_id,
        ell: ell.to_string(),
        reason: why.to_string(),
    };
    let (a, b, c) = match case_id {
        1 | 2 => {
            if !ell.is_integer() {
                return Err(bad("needs integer ell"));
            }
            let q = l * (l + 1.0);
            (q / 8.0, q / 4.0, q / 8.0)
        }
        3..=6 => {
            if ell.is_integer() {
                return Err(bad("needs half-integer ell"));
            }
            let small = (l * l - 0.25) / 8.0;
            let big = (l * l + 2.0 * l + 0.75) / 8.0;
            let b = (l * l + l + 0.75) / 4.0;
            if case_id <= 4 {
                (small, b, big)
            } else {
                (big, b, small)
            }
        }
        7 | 8 => {
            if !ell.is_integer() || ell.twice() == 0 {
                return Err(bad("needs integer ell >= 1"));
            }
            let q = l * (l + 1.0);
            (q / 8.0, (q + 2.0) / 4.0, q / 8.0)
        }
        _ => return Err(bad("case must be 1..8")),
    };
    Ok(CaseCoefficients {
        case_id,
        ell,
        a,
        b,
        c,
        equal_masses_required: case_id >= 3,
    })
}
