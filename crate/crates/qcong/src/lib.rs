//! Exact-arithmetic verification toolkit for q-supercongruences of truncated
//! N-tuple sums of basic hypergeometric series, their p-adic specializations,
//! and the N-fold convolution identities they rest on.
//!
//! Everything is computed over exact rationals: polynomials in q, Laurent
//! polynomials in an auxiliary variable x with polynomial coefficients, and
//! residues modulo prime powers. No floating point anywhere.

pub mod arith;
pub mod convolution;
pub mod padic;
pub mod qpoly;
pub mod terms;
pub mod xlaurent;

pub use arith::{Integer, Rational};
pub use qpoly::{QLaurentPoly, QPoly};
