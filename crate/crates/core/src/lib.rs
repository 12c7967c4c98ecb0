//! Exact computations with vertex superalgebras that admit PBW bases:
//! affine, Neveu-Schwarz and free differential algebras, their n-th
//! products and axioms, the standard filtration, Y(z)-injectivity
//! certificates and Hopf algebra actions.

pub mod algebra;
pub mod error;
pub mod filtration;
pub mod fixtures;
pub mod hopf;
pub mod injectivity;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod vertex;

pub use algebra::{Algebra, AlgebraSpec, Monomial, StateVector};
pub use error::{Error, Result};
pub use scalar::{Parity, Scalar, Weight};
