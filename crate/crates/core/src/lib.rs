//! Exact computations for Baumslag-Solitar groups `BS(n,m) = <a, b | b a^n b^-1 = a^m>`
//! and the Hecke pair `(BS(n,m), <a>)`.

pub mod error;
pub mod group;
pub mod bass_serre;
pub mod fusion;
pub mod hecke;
mod json;
pub mod oracle;
pub mod rigidity;
pub mod sample;
pub mod selftest;

pub use error::{Error, Result};
