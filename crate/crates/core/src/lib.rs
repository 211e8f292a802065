//! Exact computations for symmetric pairs `(g, θ)` over ℚ: sl2-triples and
//! the speciality trace criterion, descendants, local Weil constants, and
//! forward chaining over the implications between pair properties.
//!
//! The linear algebra and Lie algebra layers are generic over [`Scalar`];
//! the audit, report and CLI layers work over [`Rational`].

pub mod cli;
pub mod criteria;
pub mod error;
pub mod group;
pub mod inference;
pub mod lie;
pub mod linalg;
pub mod pair;
pub mod report;
pub mod scalar;
pub mod sl2;
pub mod weil;

pub use error::{Error, Result};
pub use scalar::{QuadExt, Rational, Scalar};

pub type RationalMatrix = linalg::Matrix<Rational>;
pub type QuadMatrix = linalg::Matrix<QuadExt>;
pub type RationalVector = linalg::Vector<Rational>;
pub type RationalLieAlgebra = lie::LieAlgebra<Rational>;
pub type RationalPair = pair::SymmetricPair<Rational>;
pub type RationalTriple = sl2::SL2Triple<Rational>;
