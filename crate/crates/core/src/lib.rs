//! Exact non-archimedean amoebas and tropical hypersurfaces of Laurent
//! polynomials over the rationals.
//!
//! Everything that lives at a finite place is computed with exact rational
//! arithmetic: valuations, lifted Newton polytopes, the polyhedral cells of
//! the tropical hypersurface, complement components and ray tests. The
//! archimedean place is the one exception and is handled in floating point
//! by [`archimedean`], which never feeds back into the exact modules.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod adelic;
pub mod archimedean;
pub mod dynamics;
mod error;
pub mod lift;
mod linalg;
pub mod poly;
pub mod polyhedron;
pub mod rational;
pub mod tropical;

pub use error::{Error, ParseError, Result};
pub use poly::{ExpVec, IdealPresentation, LaurentPoly};
pub use polyhedron::{CellComplex, HPolyhedron, LinearConstraint, Relation};
pub use rational::{Place, Prime, Rational, Valuation};
pub use tropical::{Sign, TropicalHypersurface};
