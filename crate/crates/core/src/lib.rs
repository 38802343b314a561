//! Exact polynomial toolkit: truncated power series, diagonal Padé
//! approximants, integer factorization, p-adic Newton polygons and tiered
//! Galois group identification.

pub mod error;
pub mod factor;
pub mod format;
pub mod galois;
pub mod modp;
pub mod pade;
pub mod padic;
pub mod poly;
pub mod primes;
pub mod repro;
pub mod resultant;
pub mod schur;
pub mod series;

pub use error::{Error, Result};
pub use poly::{BigRat, IntPoly, RatPoly};
