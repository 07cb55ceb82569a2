//! Exact computations in the unital 3-Lie Poisson algebra `L` with basis
//! `L_{l,m}^r` (`l, m, r` half-integers), its canonical Nambu realization,
//! the classical 3-Lie algebras it contains, and its structure theory.
//!
//! Every coefficient lives in the number field `Q(i, sqrt 2)`; there is no
//! floating point anywhere in the crate.

pub mod algebra;
pub mod combination;
pub mod derivations;
pub mod embeddings;
pub mod error;
pub mod expr;
pub mod halfint;
pub mod json;
pub mod models;
pub mod nambu;
pub mod sampling;
pub mod scalars;
pub mod structure;

pub use algebra::{BasisIndex, Element, Poisson};
pub use combination::Combination;
pub use error::Error;
pub use halfint::HalfInt;
pub use scalars::{Rational, Scalar};
