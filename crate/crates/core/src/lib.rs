//! The sequence (surjection) operad, the coefficient elements `C(f; e)` and
//! the chain map `Φ_k` they define on bar complexes, the operad diagonal, and
//! Steenrod operations on the cohomology of bar complexes of cochain algebras.
//!
//! Everything is generic over a coefficient ring implementing [`Coeff`]; the
//! aliases [`Z`], [`F2`], [`F3`], [`F5`] and [`F7`] cover the rings used in
//! practice.

#![allow(clippy::type_complexity, clippy::needless_range_loop)]

pub mod algebra;
pub mod bar;
pub mod cochains;
pub mod coefficients;
pub mod diagonal;
pub mod error;
pub mod free_algebra;
pub mod indexing;
pub mod linalg;
pub mod linear;
pub mod operad;
pub mod parse;
pub mod perm;
pub mod phi;
pub mod ring;
pub mod simplicial;
pub mod steenrod;
pub mod surjection;
pub mod verify;

pub use error::{Error, Result};
pub use linear::LinComb;
pub use operad::OperadElement;
pub use ring::{Coeff, Field, Fp};
pub use surjection::Surjection;

/// The integers.
pub type Z = i64;
pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
