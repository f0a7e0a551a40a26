//! Exact counting of hyperbolic components of quadratic rational maps.
//!
//! The closed-form counts live in [`counts`] and [`limbcomb`]; the
//! polynomial families and their exact certificates in [`polyengine`];
//! the Bezout ledgers and the numerical intersection oracle in
//! [`intersect`].

pub mod counts;
pub mod exactcore;
pub mod intersect;
pub mod limbcomb;
pub mod modp;
pub mod polyengine;
pub mod tables;
