use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use super::operators::{build_operator_set, chi, max_abs, IrrepPair, OperatorSet};

/// Residuals below this count as holding.
pub const RESIDUAL_TOL: f64 = 1e-12;
/// Eigenvalue clustering tolerance for the brute-force search.
pub const CLUSTER_TOL: f64 = 1e-9;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// One line of a verification report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub pair: String,
    pub id: String,
    pub residual: f64,
    pub pass: bool,
}

impl CheckRecord {
    fn new(pair: IrrepPair, id: impl Into<String>, residual: f64) -> Self {
        Self {
            pair: pair.to_string(),
            id: id.into(),
            residual,
            pass: residual < RESIDUAL_TOL,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutatorReport {
    pub pair: String,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
}

fn comm(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b - b * a
}

fn anti(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    a * b + b * a
}

/// The six n = 3 relations, measured on the K-invariant subspace T′.
///
/// All D's preserve the T₀+W₀ weight spaces, so compressing before multiplying is exact.
/// The last two relations hold only modulo operators that vanish on K-invariant vectors,
/// which is why the full tensor space is not used.
pub fn verify_commutators(set: &OperatorSet) -> CommutatorReport {
    let d0 = set.restrict(&set.d0);
    let d1 = set.restrict(&set.d1);
    let d2 = set.restrict(&set.d2);
    let d3 = set.restrict(&set.d3);
    let two = Complex64::new(2.0, 0.0);

    let relations: [(&str, DMatrix<Complex64>); 6] = [
        ("[D0,D1]+2D3", comm(&d0, &d1) + &d3 * two),
        ("[D0,D2]-2D3", comm(&d0, &d2) - &d3 * two),
        ("[D0,D3]-(D1-D2)", comm(&d0, &d3) - (&d1 - &d2)),
        ("[D1,D2]+2{D0,D3}", comm(&d1, &d2) + anti(&d0, &d3) * two),
        ("[D1,D3]+{D0,D1}", comm(&d1, &d3) + anti(&d0, &d1)),
        ("[D2,D3]-{D0,D2}", comm(&d2, &d3) - anti(&d0, &d2)),
    ];
    let records: Vec<_> = relations
        .iter()
        .map(|(id, m)| CheckRecord::new(set.pair, *id, max_abs(m.iter())))
        .collect();
    let pass = records.iter().all(|r| r.pass);
    CommutatorReport {
        pair: set.pair.to_string(),
        records,
        pass,
    }
}

/// Which invariant operator an expectation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Operator {
    D0,
    D0Squared,
    D1,
    D2,
    D3,
}

impl Operator {
    fn name(self) -> &'static str {
        match self {
            Operator::D0 => "D0",
            Operator::D0Squared => "D0^2",
            Operator::D1 => "D1",
            Operator::D2 => "D2",
            Operator::D3 => "D3",
        }
    }

    fn apply(self, set: &OperatorSet, v: &DVector<Complex64>) -> DVector<Complex64> {
        match self {
            Operator::D0 => &set.d0 * v,
            Operator::D0Squared => &set.d0 * (&set.d0 * v),
            Operator::D1 => &set.d1 * v,
            Operator::D2 => &set.d2 * v,
            Operator::D3 => &set.d3 * v,
        }
    }
}

/// A vector from one of the eight series together with the images the theorem assigns to it.
#[derive(Debug, Clone)]
pub struct SeriesVector {
    pub series: u8,
    pub label: String,
    pub vector: DVector<Complex64>,
    pub images: Vec<(Operator, DVector<Complex64>)>,
}

fn scaled(v: &DVector<Complex64>, s: Complex64) -> DVector<Complex64> {
    v * s
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

// Series 1 and 2: χ₀ with D₀ = D₃ = 0 and D₁ = D₂ = −ℓ(ℓ+1).
fn chi_zero_series(series: u8, pair: IrrepPair, ell: f64) -> SeriesVector {
    let v = chi(pair, 0);
    let zero = DVector::zeros(pair.dim());
    let ev = real(-ell * (ell + 1.0));
    SeriesVector {
        series,
        label: "chi(0)".into(),
        images: vec![
            (Operator::D0, zero.clone()),
            (Operator::D3, zero),
            (Operator::D1, scaled(&v, ev)),
            (Operator::D2, scaled(&v, ev)),
        ],
        vector: v,
    }
}

// Series 3–6: χ_{1/2} ± χ_{−1/2} where the other label is ℓ.
fn half_series(series: u8, pair: IrrepPair, ell: f64, symmetric: bool) -> SeriesVector {
    let plus = chi(pair, 1) + chi(pair, -1);
    let minus = chi(pair, 1) - chi(pair, -1);
    let big = real(-(ell * ell + 2.0 * ell + 0.75));
    let small = real(-(ell * ell - 0.25));
    let k = ell + 0.5;
    let (v, d1, d2, d3, label) = if symmetric {
        (plus.clone(), big, small, scaled(&minus, -I * k), "chi(1/2) + chi(-1/2)")
    } else {
        (minus.clone(), small, big, scaled(&plus, I * k), "chi(1/2) - chi(-1/2)")
    };
    SeriesVector {
        series,
        label: label.into(),
        images: vec![
            (Operator::D0Squared, scaled(&v, real(-1.0))),
            (Operator::D1, scaled(&v, d1)),
            (Operator::D2, scaled(&v, d2)),
            (Operator::D3, d3),
        ],
        vector: v,
    }
}

// Series 7–8: χ₁ − χ₋₁ where the other label is ℓ ≥ 1.
fn unit_series(series: u8, pair: IrrepPair, ell: f64) -> SeriesVector {
    let v = chi(pair, 2) - chi(pair, -2);
    let ev = real(-ell * (ell + 1.0));
    let d3 = scaled(&chi(pair, 0), I * (2.0 * (2.0 * ell * (ell + 1.0)).sqrt()));
    SeriesVector {
        series,
        label: "chi(1) - chi(-1)".into(),
        images: vec![
            (Operator::D0Squared, scaled(&v, real(-4.0))),
            (Operator::D1, scaled(&v, ev)),
            (Operator::D2, scaled(&v, ev)),
            (Operator::D3, d3),
        ],
        vector: v,
    }
}

/// Every series vector the eigenvector theorem assigns to `pair` (possibly several, possibly none).
pub fn series_vectors(pair: IrrepPair) -> Vec<SeriesVector> {
    let (t1, t2) = (pair.ell1.twice(), pair.ell2.twice());
    let (l1, l2) = (pair.ell1.value(), pair.ell2.value());
    let mut out = Vec::new();
    if t2 == 0 && pair.is_integer() {
        out.push(chi_zero_series(1, pair, l1));
    }
    if t1 == 0 && pair.is_integer() {
        out.push(chi_zero_series(2, pair, l2));
    }
    if t1 == 1 {
        out.push(half_series(3, pair, l2, true));
    }
    if t2 == 1 {
        out.push(half_series(4, pair, l1, true));
    }
    if t1 == 1 {
        out.push(half_series(5, pair, l2, false));
    }
    if t2 == 1 {
        out.push(half_series(6, pair, l1, false));
    }
    if t1 == 2 && t2 >= 2 && pair.is_integer() {
        out.push(unit_series(7, pair, l2));
    }
    if t2 == 2 && t1 >= 2 && pair.is_integer() {
        out.push(unit_series(8, pair, l1));
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenSeriesReport {
    pub pair: String,
    pub applicable: bool,
    pub records: Vec<CheckRecord>,
    pub pass: bool,
}

/// Applies the invariant operators to every applicable series vector and compares with the stated images.
pub fn verify_eigen_series(pair: IrrepPair) -> EigenSeriesReport {
    verify_eigen_series_with(&build_operator_set(pair))
}

pub fn verify_eigen_series_with(set: &OperatorSet) -> EigenSeriesReport {
    let pair = set.pair;
    let vectors = series_vectors(pair);
    let mut records = Vec::new();
    for sv in &vectors {
        for (op, expected) in &sv.images {
            let got = op.apply(set, &sv.vector);
            let id = format!("series {}: {} on {}", sv.series, op.name(), sv.label);
            records.push(CheckRecord::new(pair, id, max_abs((got - expected).iter())));
        }
    }
    let applicable = !vectors.is_empty();
    EigenSeriesReport {
        pair: pair.to_string(),
        applicable,
        pass: records.iter().all(|r| r.pass),
        records,
    }
}

/// One common eigenspace of D₀², D₁, D₂ on T′.
#[derive(Debug, Clone)]
pub struct CommonEigenspace {
    pub d0_squared: f64,
    pub d1: f64,
    pub d2: f64,
    /// Orthonormal columns in T′ coordinates.
    pub basis: DMatrix<Complex64>,
}

fn eigenspaces(h: &DMatrix<Complex64>) -> Vec<(f64, DMatrix<Complex64>)> {
    let n = h.nrows();
    let eig = h.clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut out = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && (eig.eigenvalues[order[end]] - eig.eigenvalues[order[start]]).abs() < CLUSTER_TOL {
            end += 1;
        }
        let cols: Vec<_> = order[start..end].iter().map(|&i| eig.eigenvectors.column(i).into_owned()).collect();
        out.push((eig.eigenvalues[order[start]], DMatrix::from_columns(&cols)));
        start = end;
    }
    out
}

// Intersection of two subspaces with orthonormal bases: eigenvalue-1 eigenvectors of U†P_V U.
fn intersect(u: &DMatrix<Complex64>, v: &DMatrix<Complex64>) -> Option<DMatrix<Complex64>> {
    let proj = v * v.adjoint();
    let m = u.adjoint() * proj * u;
    let eig = m.symmetric_eigen();
    let cols: Vec<_> = (0..eig.eigenvalues.len())
        .filter(|&i| eig.eigenvalues[i] > 1.0 - CLUSTER_TOL)
        .map(|i| u * eig.eigenvectors.column(i))
        .collect();
    if cols.is_empty() {
        None
    } else {
        Some(DMatrix::from_columns(&cols))
    }
}

/// Brute-force search for common eigenvectors of D₀², D₁, D₂ on T′.
pub fn common_eigenspaces(set: &OperatorSet) -> Vec<CommonEigenspace> {
    let d0sq = set.restrict(&(&set.d0 * &set.d0));
    let d1 = set.restrict(&set.d1);
    let d2 = set.restrict(&set.d2);
    let (s0, s1, s2) = (eigenspaces(&d0sq), eigenspaces(&d1), eigenspaces(&d2));
    let mut out = Vec::new();
    for (e1, b1) in &s1 {
        for (e2, b2) in &s2 {
            let Some(b12) = intersect(b1, b2) else { continue };
            for (e0, b0) in &s0 {
                if let Some(basis) = intersect(&b12, b0) {
                    out.push(CommonEigenspace {
                        d0_squared: *e0,
                        d1: *e1,
                        d2: *e2,
                        basis,
                    });
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletenessReport {
    pub pair: String,
    pub found: usize,
    pub expected: usize,
    /// Common eigenspaces not spanned by a single theorem vector.
    pub unexpected: usize,
    /// Theorem vectors that the search did not find.
    pub missing: usize,
    pub pass: bool,
}

fn parallel(a: &DVector<Complex64>, b: &DVector<Complex64>) -> bool {
    let overlap = a.dotc(b).norm();
    (overlap - a.norm() * b.norm()).abs() < 1e-9 * a.norm() * b.norm()
}

/// Checks that the brute-force common eigenvectors are exactly the theorem's list, up to scale.
pub fn verify_series_completeness(pair: IrrepPair) -> CompletenessReport {
    let set = build_operator_set(pair);
    let idx = set.invariant_indices();
    let to_tprime = |v: &DVector<Complex64>| DVector::from_iterator(idx.len(), idx.iter().map(|&i| v[i]));

    // distinct theorem vectors (series overlap for e.g. (1/2,1/2) and (0,0))
    let mut expected: Vec<DVector<Complex64>> = Vec::new();
    for sv in series_vectors(pair) {
        let v = to_tprime(&sv.vector);
        if !expected.iter().any(|e| parallel(e, &v)) {
            expected.push(v);
        }
    }

    let found = common_eigenspaces(&set);
    let mut unexpected = 0;
    let mut matched = vec![false; expected.len()];
    for space in &found {
        if space.basis.ncols() != 1 {
            unexpected += 1;
            continue;
        }
        let f = space.basis.column(0).into_owned();
        match expected.iter().position(|e| parallel(e, &f)) {
            Some(i) => matched[i] = true,
            None => unexpected += 1,
        }
    }
    let missing = matched.iter().filter(|m| !**m).count();
    CompletenessReport {
        pair: pair.to_string(),
        found: found.len(),
        expected: expected.len(),
        unexpected,
        missing,
        pass: unexpected == 0 && missing == 0,
    }
}
