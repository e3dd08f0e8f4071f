//! Exact operator product expansions in free-field vertex superalgebras.
//!
//! The engine works on Fock states: rational linear combinations of
//! normally ordered creation-operator monomials applied to a vacuum vector.
//! Every generating field is "free" in the sense that all pairwise
//! contractions are scalar multiples of the vacuum, which makes every
//! circle product `a (n) b` computable by a terminating recursion with
//! exact rational coefficients.
//!
//! Modules:
//! - [`scalar`]: exact rational coefficients and integer binomials
//! - [`system`]: generator tables and their contraction data
//! - [`state`]: normally ordered monomials, states, gradings
//! - [`wick`]: mode application, circle products, OPEs, Wick products
//! - [`linalg`]: exact kernels, graded slices, annihilator and closure checks
//! - [`lie`]: small Lie (super)algebras, invariant forms, dual bases
//! - [`catalog`]: the built-in systems and named field libraries
//! - [`qseries`]: truncated two-variable graded characters
//! - [`expr`], [`config`]: the field-expression grammar and config format
//! - [`report`], [`suites`]: verification suites with JSON reporting

pub mod catalog;
pub mod config;
pub mod error;
pub mod expr;
pub mod lie;
pub mod linalg;
pub mod qseries;
pub mod report;
pub mod sample;
pub mod scalar;
pub mod state;
pub mod suites;
pub mod system;
pub mod wick;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use state::{GradeVector, Mode, NormalMonomial, State};
pub use system::{FreeFieldSystem, GeneratorSpec, Parity};
pub use wick::{Engine, OpeResult};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
