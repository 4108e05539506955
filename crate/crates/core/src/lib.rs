//! Exact invariants of families of projective hypersurfaces.
//!
//! The crate computes Hodge and Betti numbers of smooth hypersurfaces and of
//! their cyclic covers through Jacobian rings, builds the local monodromy
//! operators (Picard–Lefschetz transformations and complex reflections) over
//! cyclotomic fields, and assembles these into a certificate that the kernel
//! of the natural monodromy representation is large.
//!
//! Everything is exact: rationals are arbitrary precision and scalars live in
//! cyclotomic fields `Q(ζ_k)`.

pub mod algebra;
pub mod classify;
pub mod cli;
pub mod error;
pub mod graded;
pub mod hodge;
pub mod reflection;
pub mod vanishing;

pub use error::{Error, Result};
