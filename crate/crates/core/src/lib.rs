//! Spectral bounds on the order of regular uniform hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! - [`orthopoly`]: the polynomial families `F_i`, `G_i` over exact rationals,
//!   their zeros, and the tridiagonal matrices `T(r, u, d, c)`.
//! - [`hypergraph`]: concrete hypergraphs, walks, girth and distance-regularity.
//! - [`spectra`]: a dense symmetric eigensolver and spectrum utilities.
//! - [`bounds`]: linear programming bounds, closed-form bounds and refinements.
//! - [`constructions`]: orthogonal arrays and named fixture hypergraphs.

pub mod bounds;
pub mod constructions;
pub mod error;
pub mod fixtures;
pub mod hypergraph;
pub mod orthopoly;
pub mod poly;
pub mod scalar;
pub mod spectra;

pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use orthopoly::{FPoly, Params, TridiagonalArray};
pub use scalar::Scalar;
