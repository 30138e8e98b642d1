//! Limiting joint moments of Wigner, Toeplitz, Hankel, reverse circulant and
//! symmetric circulant random matrices.
//!
//! Limits are sums of word volumes ([`limits`]), estimated by Monte Carlo or
//! by exact circuit counting with extrapolation. [`sampler`] and [`spectra`]
//! simulate the matrices for comparison, and [`freeness`] checks mixed
//! Wigner moments against the non-crossing prediction.

pub mod algebra;
pub mod error;
pub mod freeness;
pub mod limits;
pub mod link;
pub mod sampler;
pub mod seed;
pub mod spectra;
pub mod tables;

pub use algebra::{enumerate_pair_matched_words, ColoredWord, Letter, MatchPair, Monomial};
pub use error::{Error, Result};
pub use link::{link_eval, link_solve, property_p_count, LValue, LinkKind};
