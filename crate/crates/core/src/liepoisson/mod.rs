//! Lie–Poisson brackets on so*(4), so*(1,3) and their three-dimensional subalgebras.

mod algebra;
mod bracket;
mod charts;
mod poly;
mod tables;

use thiserror::Error;

pub use algebra::LieAlgebraSpec;
pub use bracket::{lie_poisson_bracket, lie_poisson_vector_field, numeric_bracket, numeric_gradient};
pub use charts::{
    h3_angles, h3_uv, k_action, kirillov_form, orbit_chart_h3, orbit_chart_s3, orbit_chart_s3_inverse,
    orbit_chart_s3_tangents, symplectic_form_residual, DualPoint, TRANSVERSALITY_TOL,
};
pub use poly::PolyFunction;
pub use tables::{
    casimir_check, casimir_i1, casimir_i2, casimir_so12, casimir_so3, expected_table, invariant_polynomials,
    orbit_quadratics_p, orbit_quadratics_split, verify_invariant_table, CasimirReport, TableKind, TableRecord,
    TableReport, TABLE_TOL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LieError {
    #[error("polynomial has {got} variables but the algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("orbit with mu = {mu}, nu = {nu} is not transversal to p1 = 0 (requires mu != nu)")]
    NotTransversal { mu: f64, nu: f64 },
    #[error("|u| = {} exceeds min(mu, nu) = {bound}", u.abs())]
    OutsideChart { u: f64, bound: f64 },
    #[error("Casimir values must be nonnegative, got mu = {mu}, nu = {nu}")]
    NegativeCasimir { mu: f64, nu: f64 },
    #[error("the hyperbolic chart requires nu != 0")]
    ZeroNu,
}
