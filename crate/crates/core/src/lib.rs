//! Finite, exact checks behind the nonvanishing of cuspidal cohomology for
//! `SL_n` and `GL_n` over totally imaginary fields with strongly-pure weights.

pub mod branching;
pub mod cohomology;
pub mod error;
pub mod exterior;
pub mod galois;
pub mod lie;
pub mod rational;
pub mod report;
pub mod sample;
pub mod selftest;
pub mod weight;

pub use error::{Error, Result};
