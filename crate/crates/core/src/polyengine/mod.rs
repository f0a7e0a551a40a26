//! Exact polynomials and the recursive families built from them.

pub mod certify;
pub mod cyclo;
pub mod dense;
pub mod families;
pub mod ring;
pub mod sparse;
pub mod uni;

pub use families::{family_poly, Budget, FamilyError, FamilyId};
pub use sparse::{PolyError, SparsePoly, Var};
pub use uni::UniPoly;
