//! Exact sedenion and G2 geometry: zero divisors, invariant metrics on
//! G2 orbits, curvature and sum-of-squares certificates.

#![allow(clippy::needless_range_loop)]

pub mod cayley_dickson;
pub mod error;
pub mod g2;
pub mod golden;
pub mod homogeneous;
pub mod linalg;
pub mod par;
pub mod scalar;
pub mod sos;

pub use error::{Error, Result};
