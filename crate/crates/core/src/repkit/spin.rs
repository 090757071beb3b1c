use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::RepError;

/// An su(2) highest weight ℓ, stored doubled so half-integers stay exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpinLabel {
    two_ell: u32,
}

impl SpinLabel {
    pub const ZERO: SpinLabel = SpinLabel { two_ell: 0 };
    pub const HALF: SpinLabel = SpinLabel { two_ell: 1 };
    pub const ONE: SpinLabel = SpinLabel { two_ell: 2 };

    pub const fn from_twice(two_ell: u32) -> Self {
        Self { two_ell }
    }

    pub const fn integer(ell: u32) -> Self {
        Self { two_ell: 2 * ell }
    }

    /// Parses `"3/2"`, `"1.5"` or `"2"`.
    pub fn parse(s: &str) -> Result<Self, RepError> {
        let s = s.trim();
        let bad = || RepError::BadSpin(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(Self::integer(num)),
                "2" => Ok(Self::from_twice(num)),
                _ => Err(bad()),
            };
        }
        let x: f64 = s.parse().map_err(|_| bad())?;
        let doubled = 2.0 * x;
        if !(doubled >= 0.0) || (doubled - doubled.round()).abs() > 1e-12 || doubled > 1e6 {
            return Err(bad());
        }
        Ok(Self::from_twice(doubled.round() as u32))
    }

    pub fn twice(self) -> u32 {
        self.two_ell
    }

    pub fn value(self) -> f64 {
        f64::from(self.two_ell) / 2.0
    }

    pub fn dim(self) -> usize {
        self.two_ell as usize + 1
    }

    pub fn is_integer(self) -> bool {
        self.two_ell % 2 == 0
    }

    /// Doubled weights 2n for n = −ℓ, …, +ℓ in basis order.
    pub fn doubled_weights(self) -> impl Iterator<Item = i64> {
        let t = i64::from(self.two_ell);
        (0..=t).map(move |i| -t + 2 * i)
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.two_ell / 2)
        } else {
            write!(f, "{}/2", self.two_ell)
        }
    }
}

/// The ladder triple (T₀, T₊, T₋) on the irrep of weight ℓ.
#[derive(Debug, Clone)]
pub struct SpinMatrices {
    pub t0: DMatrix<Complex64>,
    pub t_plus: DMatrix<Complex64>,
    pub t_minus: DMatrix<Complex64>,
}

// sqrt((ℓ ∓ n)(ℓ ± n + 1)) with doubled arguments; the product under the root is an integer / 4.
fn ladder_coefficient(two_ell: i64, two_n: i64, raising: bool) -> f64 {
    let prod = if raising {
        (two_ell - two_n) * (two_ell + two_n + 2)
    } else {
        (two_ell + two_n) * (two_ell - two_n + 2)
    };
    (prod as f64).sqrt() / 2.0
}

/// Basis ψ_n ordered n = −ℓ … +ℓ with
/// T₀ψ_n = nψ_n, T₊ψ_n = −√((ℓ−n)(ℓ+n+1)) ψ_{n+1}, T₋ψ_n = −√((ℓ+n)(ℓ−n+1)) ψ_{n−1}.
pub fn spin_matrices(ell: SpinLabel) -> SpinMatrices {
    let d = ell.dim();
    let two_ell = i64::from(ell.twice());
    let mut t0 = DMatrix::zeros(d, d);
    let mut t_plus = DMatrix::zeros(d, d);
    let mut t_minus = DMatrix::zeros(d, d);
    for (i, two_n) in ell.doubled_weights().enumerate() {
        t0[(i, i)] = Complex64::new(two_n as f64 / 2.0, 0.0);
        if i + 1 < d {
            t_plus[(i + 1, i)] = Complex64::new(-ladder_coefficient(two_ell, two_n, true), 0.0);
        }
        if i > 0 {
            t_minus[(i - 1, i)] = Complex64::new(-ladder_coefficient(two_ell, two_n, false), 0.0);
        }
    }
    SpinMatrices { t0, t_plus, t_minus }
}
