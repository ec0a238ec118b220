//! Exact construction of twisted multiloop and full toroidal Lie algebras,
//! with machine verification of their defining identities at desk scale.
//!
//! Everything is computed over the cyclotomic field Q(zeta_M) where M is
//! the least common multiple of the automorphism orders, so all residuals
//! in the verification suites are exact zeros, never tolerances.

pub mod error;
pub mod scalar;
pub mod linalg;
pub mod simple_lie;
pub mod twist;
pub mod toroidal;
pub mod root_data;
pub mod coord_change;
pub mod ideals;
pub mod module_lab;
pub mod expr;
pub mod io;
pub mod verify;

pub use error::AlgebraError;
pub use scalar::CycloScalar;
pub use simple_lie::{build_simple, CartanType, GElement, SimpleAlgebra};


