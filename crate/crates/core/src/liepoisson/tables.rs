use serde::Serialize;

use super::algebra::LieAlgebraSpec;
use super::bracket::lie_poisson_bracket;
use super::poly::PolyFunction;
use super::LieError;

pub const TABLE_TOL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Spherical,
    Hyperbolic,
}

fn p(i: usize) -> PolyFunction {
    PolyFunction::var(6, i - 1)
}

/// P₀ = p₄, P₁ = p₅² + p₆², P₂ = p₂² + p₃², P₃ = −p₃p₅ + p₂p₆, on six coordinates.
pub fn invariant_polynomials() -> [PolyFunction; 4] {
    [
        p(4),
        &(&p(5) * &p(5)) + &(&p(6) * &p(6)),
        &(&p(2) * &p(2)) + &(&p(3) * &p(3)),
        &(&p(2) * &p(6)) - &(&p(3) * &p(5)),
    ]
}

/// Right-hand sides of the six brackets [P_a, P_b], a < b, in the order
/// (0,1), (0,2), (0,3), (1,2), (1,3), (2,3).
pub fn expected_table(kind: TableKind) -> [PolyFunction; 6] {
    let [p0, p1, p2, p3] = invariant_polynomials();
    let s = match kind {
        TableKind::Spherical => -1.0,
        TableKind::Hyperbolic => 1.0,
    };
    [
        p3.scale(2.0 * s),
        p3.scale(2.0),
        match kind {
            TableKind::Spherical => &p1 - &p2,
            TableKind::Hyperbolic => &p1 + &p2,
        },
        (&p0 * &p3).scale(-4.0),
        (&p0 * &p1).scale(-2.0),
        (&p0 * &p2).scale(2.0),
    ]
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
const RHS_NAMES_S: [&str; 6] = ["-2P3", "2P3", "P1-P2", "-4P0P3", "-2P0P1", "2P0P2"];
const RHS_NAMES_H: [&str; 6] = ["2P3", "2P3", "P1+P2", "-4P0P3", "-2P0P1", "2P0P2"];

#[derive(Debug, Clone, Serialize)]
pub struct TableRecord {
    pub relation: String,
    /// Max coefficient of lhs − rhs on the slice p₁ = 0.
    pub residual: f64,
    /// The same before restricting; nonzero entries all contain p₁.
    pub off_slice: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub algebra: String,
    pub kind: TableKind,
    pub records: Vec<TableRecord>,
    pub pass: bool,
}

/// Computes the six brackets of the P's symbolically and subtracts the tabulated right-hand sides.
///
/// The table describes the reduced space, where the stabilizer momentum p₁ vanishes; two of the
/// brackets pick up extra terms proportional to p₁ off that slice, so residuals are taken at p₁ = 0.
pub fn verify_invariant_table(alg: &LieAlgebraSpec, kind: TableKind) -> Result<TableReport, LieError> {
    let polys = invariant_polynomials();
    let expected = expected_table(kind);
    let names = match kind {
        TableKind::Spherical => RHS_NAMES_S,
        TableKind::Hyperbolic => RHS_NAMES_H,
    };
    let mut records = Vec::new();
    for (n, &(a, b)) in PAIRS.iter().enumerate() {
        let got = lie_poisson_bracket(&polys[a], &polys[b], alg)?;
        let diff = &got - &expected[n];
        let residual = diff.restrict_zero(0).max_abs_coeff();
        records.push(TableRecord {
            relation: format!("[P{a},P{b}] = {}", names[n]),
            residual,
            off_slice: diff.max_abs_coeff(),
            pass: residual < TABLE_TOL,
        });
    }
    Ok(TableReport {
        algebra: alg.name.clone(),
        kind,
        pass: records.iter().all(|r| r.pass),
        records,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CasimirReport {
    pub algebra: String,
    pub casimir: String,
    /// Max coefficient of [C, x_i] for each coordinate.
    pub residuals: Vec<f64>,
    pub pass: bool,
}

/// Brackets `c` with every coordinate function.
pub fn casimir_check(alg: &LieAlgebraSpec, c: &PolyFunction) -> Result<CasimirReport, LieError> {
    let residuals = (0..alg.dim)
        .map(|i| lie_poisson_bracket(c, &PolyFunction::var(alg.dim, i), alg).map(|b| b.max_abs_coeff()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CasimirReport {
        algebra: alg.name.clone(),
        casimir: c.to_string(),
        pass: residuals.iter().all(|r| *r < TABLE_TOL),
        residuals,
    })
}

fn sum_sq(n: usize, idx: &[usize], signs: &[f64]) -> PolyFunction {
    idx.iter().zip(signs).fold(PolyFunction::zero(n), |acc, (&i, &s)| {
        let x = PolyFunction::var(n, i);
        &acc + &(&x * &x).scale(s)
    })
}

/// I₁ = p₁²+p₂²+p₃²−p₄²−p₅²−p₆² on so*(1,3).
pub fn casimir_i1() -> PolyFunction {
    sum_sq(6, &[0, 1, 2, 3, 4, 5], &[1.0, 1.0, 1.0, -1.0, -1.0, -1.0])
}

/// I₂ = p₁p₄ + p₂p₅ + p₃p₆ on so*(1,3).
pub fn casimir_i2() -> PolyFunction {
    (0..3).fold(PolyFunction::zero(6), |acc, i| &acc + &(&p(i + 1) * &p(i + 4)))
}

/// |u|² and |v|² in split so*(4) coordinates; their level sets μ², ν² define the orbits.
pub fn orbit_quadratics_split() -> [PolyFunction; 2] {
    [sum_sq(6, &[0, 1, 2], &[1.0; 3]), sum_sq(6, &[3, 4, 5], &[1.0; 3])]
}

/// The same two quadratics in p-coordinates: 4|u|² = |p_X + p_Y|², 4|v|² = |p_X − p_Y|².
pub fn orbit_quadratics_p() -> [PolyFunction; 2] {
    let plus = (0..3).fold(PolyFunction::zero(6), |acc, i| {
        let s = &p(i + 1) + &p(i + 4);
        &acc + &(&s * &s)
    });
    let minus = (0..3).fold(PolyFunction::zero(6), |acc, i| {
        let d = &p(i + 1) - &p(i + 4);
        &acc + &(&d * &d)
    });
    [plus.scale(0.25), minus.scale(0.25)]
}

/// p₃² + p₄² + p₅² on so*(3).
pub fn casimir_so3() -> PolyFunction {
    sum_sq(3, &[0, 1, 2], &[1.0; 3])
}

/// p₃² − p₄² − p₅² on so*(1,2).
pub fn casimir_so12() -> PolyFunction {
    sum_sq(3, &[0, 1, 2], &[1.0, -1.0, -1.0])
}
