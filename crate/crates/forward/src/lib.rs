//! Forward problems on circular planar networks.
//!
//! [`solve_dirichlet`] minimises pseudopower by coordinate descent, [`solve_neumann`] minimises the
//! dual energy over cycle currents, [`response_matrix`] takes the Schur complement of a linear
//! Kirchhoff matrix, and [`make_oracle`] answers boundary-relation queries by exact propagation.

mod dirichlet;
mod graph;
mod neumann;
mod oracle;
mod response;

pub use dirichlet::{solve_dirichlet, solve_dirichlet_with, DirichletOptions, DirichletSolution, SolverState};
pub use neumann::{solve_neumann, solve_neumann_with, NeumannOptions, NeumannSolution};
pub use oracle::{boundary_currents_from_labelling, make_oracle, BoundaryOracle, NetworkOracle, OracleError};
pub use response::{response_matrix, ResponseMatrix};

use network_core::NetworkError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForwardError {
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error("edge {0} has a conductance that is not nondecreasing")]
    NonMonotone(String),
    #[error("no convergence after {steps} steps (residual {residual:e})")]
    NoConvergence { steps: usize, residual: f64 },
    #[error("boundary currents on the component of {vertex} sum to {sum}, not zero")]
    BadCurrentSum { vertex: String, sum: f64 },
    #[error("interior block of the Kirchhoff matrix is singular")]
    SingularInterior,
}
