//! Exact real root isolation for zero-dimensional integer polynomial systems.
//!
//! The pipeline projects with resultants, builds interval polynomials over
//! projected root boxes to get candidates, shears into generic position and
//! matches candidates against the roots of the sheared projection.

pub mod bisolve;
pub mod error;
pub mod exec;
pub mod genpos;
pub mod intervalpoly;
pub mod multisolve;
pub mod numeric;
pub mod poly;
pub mod random;
pub mod resultant;
pub mod univsolve;

pub use error::{Error, ParseError};
