//! Shared fixtures for the criterion benches in `benches/`.

use rug::Float;

/// Degrees swept by the polynomial and root benches.
pub const DEGREES: [u32; 4] = [10, 40, 100, 200];

/// `2^-bits` as a 64-bit float, the tolerance form the solvers take.
pub fn tol_bits(bits: i32) -> Float {
    Float::with_val(64, Float::i_exp(1, -bits))
}
