//! Signature Gröbner bases of two-sided ideals in free algebras over Q.
//!
//! The library computes reduced signature Gröbner bases up to a signature
//! bound, either directly over Q or through a modular multi-prime pipeline:
//! per-prime bases over Z/p, a weighted majority vote on leading data,
//! Chinese-remainder lifting with Farey rational reconstruction, and a
//! signature-based final verification.

pub mod arith;
pub mod bimodule;
pub mod engine;
mod error;
pub mod modular;
pub mod oracles;
pub mod order;
pub mod problem;
pub mod util;

pub use error::{Error, Result};
