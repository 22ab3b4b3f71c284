//! Balanced tensor products of module categories over `Vect[K]`, computed as
//! categories of graded bimodules with exact linear algebra.

pub mod algebra;
pub mod balanced;
pub mod corpus;
mod error;
pub mod exactla;
pub mod formats;
pub mod gradedcat;
pub mod groups;
pub mod modcat;
pub mod verify;

pub use error::{Error, Result};
pub use exactla::{Field, Matrix, Scalar, Vector};
pub use groups::FiniteGroup;
