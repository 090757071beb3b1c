use std::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::spin::{spin_matrices, SpinLabel};
use super::RepError;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Label (ℓ₁, ℓ₂) of an irreducible so(4) representation U_{ℓ₁} ⊗ V_{ℓ₂}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepPair {
    pub ell1: SpinLabel,
    pub ell2: SpinLabel,
}

impl IrrepPair {
    /// Both labels must be integer or both half-integer.
    pub fn new(ell1: SpinLabel, ell2: SpinLabel) -> Result<Self, RepError> {
        if ell1.is_integer() != ell2.is_integer() {
            return Err(RepError::MixedParity { ell1, ell2 });
        }
        Ok(Self { ell1, ell2 })
    }

    pub fn from_twice(two_ell1: u32, two_ell2: u32) -> Result<Self, RepError> {
        Self::new(SpinLabel::from_twice(two_ell1), SpinLabel::from_twice(two_ell2))
    }

    pub fn dim(&self) -> usize {
        self.ell1.dim() * self.ell2.dim()
    }

    pub fn is_integer(&self) -> bool {
        self.ell1.is_integer()
    }

    /// Twice min(ℓ₁, ℓ₂).
    pub fn twice_min(&self) -> u32 {
        self.ell1.twice().min(self.ell2.twice())
    }

    /// All valid pairs with 2ℓᵢ ≤ `max_two_ell`, in lexicographic order.
    pub fn all_up_to(max_two_ell: u32) -> Vec<IrrepPair> {
        let mut out = Vec::new();
        for a in 0..=max_two_ell {
            for b in 0..=max_two_ell {
                if let Ok(p) = Self::from_twice(a, b) {
                    out.push(p);
                }
            }
        }
        out
    }

    /// Flat index of ψ_{n₁} ⊗ φ_{n₂} (n₁ major), from doubled weights.
    pub fn flat_index(&self, two_n1: i64, two_n2: i64) -> usize {
        let i1 = ((two_n1 + i64::from(self.ell1.twice())) / 2) as usize;
        let i2 = ((two_n2 + i64::from(self.ell2.twice())) / 2) as usize;
        i1 * self.ell2.dim() + i2
    }

    /// Flat index of χ_j = ψ_j ⊗ φ_{−j}.
    pub fn chi_index(&self, two_j: i64) -> usize {
        self.flat_index(two_j, -two_j)
    }

    /// Doubled labels 2j of the K-invariant basis, ascending.
    pub fn invariant_weights(&self) -> Vec<i64> {
        let m = i64::from(self.twice_min());
        (0..=m).map(|i| -m + 2 * i).collect()
    }
}

impl fmt::Display for IrrepPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.ell1, self.ell2)
    }
}

/// Matrices of the su(2) ⊕ su(2) generators and the invariant operators D₀…D₃ on one irrep.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    pub pair: IrrepPair,
    pub dim: usize,
    pub t0: DMatrix<Complex64>,
    pub t_plus: DMatrix<Complex64>,
    pub t_minus: DMatrix<Complex64>,
    pub w0: DMatrix<Complex64>,
    pub w_plus: DMatrix<Complex64>,
    pub w_minus: DMatrix<Complex64>,
    pub d0: DMatrix<Complex64>,
    pub d1: DMatrix<Complex64>,
    pub d2: DMatrix<Complex64>,
    pub d3: DMatrix<Complex64>,
}

fn kron(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a.kronecker(b)
}

fn anti(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b + b * a
}

/// Kronecker realization on U_{ℓ₁} ⊗ V_{ℓ₂}.
///
/// D₀ = i(W₀ − T₀). Only D₀² = −(T₀ − W₀)² is fixed by the algebra; this sign is the one for
/// which [D₀, D₁] = −2D₃ holds with D₃ = i(T₋W₊ − T₊W₋).
pub fn build_operator_set(pair: IrrepPair) -> OperatorSet {
    let left = spin_matrices(pair.ell1);
    let right = spin_matrices(pair.ell2);
    let id1 = DMatrix::<Complex64>::identity(pair.ell1.dim(), pair.ell1.dim());
    let id2 = DMatrix::<Complex64>::identity(pair.ell2.dim(), pair.ell2.dim());

    let t0 = kron(&left.t0, &id2);
    let t_plus = kron(&left.t_plus, &id2);
    let t_minus = kron(&left.t_minus, &id2);
    let w0 = kron(&id1, &right.t0);
    let w_plus = kron(&id1, &right.t_plus);
    let w_minus = kron(&id1, &right.t_minus);

    let casimir_part = (anti(&t_plus, &t_minus) + anti(&w_plus, &w_minus)) * Complex64::new(-0.5, 0.0);
    let cross = &t_plus * &w_minus + &t_minus * &w_plus;

    let d0 = (&w0 - &t0) * I;
    let d1 = &casimir_part - &cross;
    let d2 = &casimir_part + &cross;
    let d3 = (&t_minus * &w_plus - &t_plus * &w_minus) * I;

    OperatorSet {
        pair,
        dim: pair.dim(),
        t0,
        t_plus,
        t_minus,
        w0,
        w_plus,
        w_minus,
        d0,
        d1,
        d2,
        d3,
    }
}

impl OperatorSet {
    /// Flat indices of the K-invariant basis χ_j, ascending in j.
    pub fn invariant_indices(&self) -> Vec<usize> {
        self.pair
            .invariant_weights()
            .into_iter()
            .map(|tj| self.pair.chi_index(tj))
            .collect()
    }

    /// Compression of `m` onto the K-invariant subspace T′ (coordinates χ_j).
    pub fn restrict(&self, m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
        let idx = self.invariant_indices();
        DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])])
    }

    /// {T₊,T₋} + {W₊,W₋}.
    pub fn casimir_sum(&self) -> DMatrix<Complex64> {
        anti(&self.t_plus, &self.t_minus) + anti(&self.w_plus, &self.w_minus)
    }

    /// The stabilizer generator T₀ + W₀.
    pub fn stabilizer(&self) -> DMatrix<Complex64> {
        &self.t0 + &self.w0
    }

    /// Negates D₃ in place. Used only to exercise failure reporting.
    pub fn negate_d3(&mut self) {
        self.d3 = -self.d3.clone();
    }
}

/// How a vector in T′ is identified.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum VectorLabel {
    /// χ_j, stored as 2j.
    Chi { two_j: i64 },
    /// A named linear combination such as "chi(1/2) + chi(-1/2)".
    Combination(String),
}

#[derive(Debug, Clone)]
pub struct InvariantBasisVector {
    pub pair: IrrepPair,
    pub coefficients: DVector<Complex64>,
    pub label: VectorLabel,
}

/// χ_j = ψ_j ⊗ φ_{−j}, −min(ℓ₁,ℓ₂) ≤ j ≤ min(ℓ₁,ℓ₂).
pub fn invariant_subspace(pair: IrrepPair) -> Vec<InvariantBasisVector> {
    pair.invariant_weights()
        .into_iter()
        .map(|two_j| InvariantBasisVector {
            pair,
            coefficients: chi(pair, two_j),
            label: VectorLabel::Chi { two_j },
        })
        .collect()
}

/// The unit vector χ_j in the full tensor space.
pub fn chi(pair: IrrepPair, two_j: i64) -> DVector<Complex64> {
    let mut v = DVector::zeros(pair.dim());
    v[pair.chi_index(two_j)] = Complex64::new(1.0, 0.0);
    v
}

pub(crate) fn max_abs<'a>(it: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    it.into_iter().fold(0.0, |acc, z| acc.max(z.norm()))
}
