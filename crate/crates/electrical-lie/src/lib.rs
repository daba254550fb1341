//! Generators of the electrical linear group and its unipotent analogue.
//!
//! `u_i(a)` for `1 ≤ i ≤ 2n` are symplectic `2n × 2n` matrices, `x_i(a)` are elementary unipotent
//! `(2n+1) × (2n+1)` matrices. Both families also act on vectors through an arbitrary bijection
//! `f` with `f(0) = 0` in place of multiplication by `a`. Products along a word are evaluated
//! left to right, so the last letter acts first on a vector.

mod function;
mod generators;
mod probe;
mod relations;
mod word;

pub use function::{ElFunction, Pwl};
pub use generators::{factorize_eval, gen_u, gen_x, symplectic_form, symplectic_residual, Composite, ElMatrix, Factorization, Family, Mode, NonlinearGen, Params};
pub use probe::{injectivity_probe, random_function, transfer, Collision, ProbeReport};
pub use relations::{braid_params, verify_relations, RelationReport, RELATION_TOLERANCE};
pub use word::{CoxeterWord, Move};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ElError {
    #[error("generator index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("word has {letters} letters but {params} parameters were given")]
    ArityMismatch { letters: usize, params: usize },
    #[error("parameter {0} is not linear and cannot be written as a matrix")]
    NotLinear(usize),
    #[error("bad function: {0}")]
    BadFunction(String),
    #[error("n must be at least 1")]
    EmptyGroup,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
}
