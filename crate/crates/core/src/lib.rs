//! Skew group algebras of monomial actions on quivers, their McKay quivers,
//! Cartan folding, root systems and fixed-point Lie subalgebras.

pub mod action;
pub mod cartan;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod fixtures;
pub mod folding;
pub mod group;
pub mod intmat;
pub mod lie;
pub mod linalg;
pub mod mckay;
pub mod quiver;
pub mod report;
pub mod representations;
pub mod roots;
pub mod skew;

pub use cyclotomic::CycScalar;
pub use error::{McKayError, Result};
pub use field::{Field, Rational};
pub use linalg::Matrix;

/// Matrices over the rationals.
pub type RatMatrix = Matrix<Rational>;
/// Matrices over cyclotomic fields.
pub type CycMatrix = Matrix<CycScalar>;
