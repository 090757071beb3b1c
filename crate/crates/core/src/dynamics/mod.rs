//! Reduced two-body dynamics on S³ and H³.

mod coeffs;
mod hamiltonian;
mod integrator;
mod params;
mod period;
mod section;

use thiserror::Error;

pub use coeffs::{coeff_h, coeff_s, coeff_s_split, coefficients, split_radii, Coefficients};
pub use hamiltonian::{Mode, Model, OrbitState, ReducedState};
pub use integrator::{
    flow_step, integrate, integrate_signed, CasimirMonitor, EnergyMonitor, Event, EventKind, IntegrateOptions,
    Integrator, Observer, Phase, Sample, Trajectory, BOUNDARY_MARGIN, CHART_MARGIN, COLLISION_R, INVERT_R,
    NEWTON_MAX_ITER, NEWTON_TOL, UNINVERT_R,
};
pub use params::{Space, SystemParams};
pub use period::radial_period_quadrature;
pub use section::{poincare_section, ApocenterObserver, Direction, Section, SectionKind, SectionObserver, SectionPoint};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DynError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("invalid mode: {0}")]
    InvalidMode(String),
    #[error("chart domain: {0}")]
    Domain(String),
    #[error("Newton iteration did not converge in {iterations} iterations")]
    NewtonDiverged { iterations: usize },
    #[error("singular Newton matrix")]
    SingularJacobian,
}
