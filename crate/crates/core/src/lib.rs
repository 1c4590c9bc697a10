//! Legendrian and transverse patterns in the solid torus: block words and their
//! relative invariants, rewriting oracles for small classifications, satellite
//! invariant formulas and closed-form mountain ranges of satellites.

pub mod atlas;
pub mod braid;
pub mod error;
pub mod legtangle;
pub mod rewrite;
pub mod satellite;

pub use error::{Error, Result};
