pub mod complex_roots;
pub mod equilibrium;
pub mod error;
pub mod factor;
pub mod geometry;
pub mod gf;
pub mod mp;
pub mod poly;
pub mod real_roots;

pub use error::{GoncharError, Result};
pub use mp::ComplexMP;
pub use poly::{gonchar_poly, gonchar_poly_q, GoncharInstance, IntPoly, RatQ};
pub use real_roots::{Interval, RootApprox};
