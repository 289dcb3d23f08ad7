//! Computations with finitely generated modules over bound quiver algebras.
//!
//! The crate builds the complete catalog of indecomposable modules of a
//! representation-finite string algebra, computes Hom/Ext spaces and the
//! Auslander-Reiten translate exactly over a prime field, and provides the
//! subcategory calculus on top of it: Fac/Sub and extension closures,
//! iterated torsion(-free) classes, cokernel chains, minimal approximations,
//! Ext-progenerators and tau-rigid module censuses.

pub mod algebra;
pub mod catalog;
pub mod hom;
pub mod linalg;
pub mod rep;
pub mod strings;
pub mod subcat;
pub mod tau;

mod error;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
