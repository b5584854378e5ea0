//! Exact and rigorous machinery for complex hyperbolic `(m, m, ∞)`-triangle
//! groups: generator construction, trace classification, and a cyclotomic
//! certifier showing that a regular elliptic product `ι₁ι₂ι₃` has no finite
//! order within a stated bound.

pub mod error;
pub mod exactnum;
pub mod certify;
pub mod classify;
pub mod cli;
pub mod triangle;

pub use error::{Error, Result};
