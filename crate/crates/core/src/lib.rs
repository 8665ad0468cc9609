//! Exact-arithmetic toolkit for dominant rational self-maps of the
//! projective plane and monomial maps of the torus.
//!
//! Everything is computed over the rationals or an explicit number field;
//! no certified value ever passes through floating point.  The headline
//! routine, [`ProjSelfMap::first_regular_iterate`], walks the iterates of a
//! map until one extends regularly to the whole plane and certifies which
//! of the admissible indices it found.

pub mod error;
mod linalg;
pub mod monomial;
pub mod mpoly;
pub mod numfield;
pub mod parse;
pub mod projmap;
pub mod skewprod;
pub mod upoly;

pub use error::Error;
pub use monomial::{Fan, IntMatrix2, MonomialMap};
pub use mpoly::{AffineRatio, HomogeneousTriple, MPoly};
pub use numfield::{FieldElement, FieldRef, NumberField, Rational};
pub use projmap::{
    Certificate, Completeness, DegreeData, Invariance, IterationReport, ProjPoint, ProjSelfMap,
};
pub use skewprod::{LinearAutoCase, LinearAutoClass, MultIndep, SkewMap, TriangularMap};
pub use upoly::{field_roots, RatFunc, UPoly};

/// Default bound on the degree of any intermediate iterate.
pub const DEFAULT_DEGREE_CAP: u64 = 4096;

/// Default bound on how many iterates the regularity search inspects.
pub const DEFAULT_ITERATE_CAP: usize = 12;

/// Default bound on matrix powers when searching for scalar or diagonal
/// powers of an integer matrix.
pub const DEFAULT_POWER_CAP: usize = 24;
