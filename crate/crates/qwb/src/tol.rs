//! Numeric tolerances shared across the crate.
//!
//! f64 carries ~15.9 significant digits; the values here leave headroom for
//! rounding accumulated over dense products on 2^8-dimensional spaces.

/// Born-rule normalization: every state must satisfy `sum |a_i|^2 = 1` within this.
pub const NORM_TOL: f64 = 1e-10;

/// Unitarity check `max |U^dag U - I|` for every constructed gate or encoding.
pub const UNITARY_TOL: f64 = 1e-10;

/// Hermiticity check `max |M - M^dag|`.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Block-extraction identity for block-encodings.
pub const BLOCK_TOL: f64 = 1e-10;

/// Pauli coefficients with modulus at or below this are dropped.
/// An exact `!= 0` test is float-unsafe; traces of zero coefficients
/// come out around 1e-16 * dim.
pub const COEFF_DROP: f64 = 1e-12;

/// Postselection probabilities below this are treated as degenerate.
pub const POSTSELECT_MIN: f64 = 1e-14;
