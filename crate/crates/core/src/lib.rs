//! Exact arithmetic for the roots of `X³ ≡ 2 (mod m)`.
//!
//! The pipeline runs through the order `Z[2^{1/3}]`:
//!
//! * [`root_finder`] enumerates roots `ν (mod m)`, by brute force and by
//!   factorization with Hensel lifting and CRT.
//! * [`ideal_correspondence`] maps a root pair `(m, ν)` to the primitive ideal
//!   with Hermite basis `(m,0,0), (−ν,1,0), (−ν²,0,1)` and back.
//! * [`parametrization`] writes that ideal as `(α)` with `α` reduced into a
//!   fundamental domain for the unit group, builds the unimodular matrix
//!   `γ`, and reads off three simultaneous rational approximations to
//!   `(ν/m, ν²/m)` with denominators of size `m^{2/3}`.
//! * [`torus_geometry`] measures spacing of torsion points on `R²/Z²`.
//! * [`sieve_check`] evaluates both sides of the large sieve inequality for
//!   the points `(ν/m, ν²/m)`.
//!
//! All integer work is overflow-checked `i128`; floating point is used only
//! for embeddings, distances and exponential sums.

pub mod arith;
pub mod cli;
pub mod cubic_ring;
pub mod error;
pub mod experiments;
pub mod ideal_correspondence;
pub mod output;
pub mod parametrization;
pub mod root_finder;
pub mod sieve_check;
pub mod torus_geometry;

pub use cubic_ring::{CofactorTriple, CubicInt};
pub use error::{Error, ErrorKind, Result};
pub use ideal_correspondence::{HnfMatrix, IdealHnf};
pub use parametrization::{GammaData, RationalPoint};
pub use root_finder::RootPair;
pub use sieve_check::{CoeffSeq, SieveReport};
pub use torus_geometry::{Lattice2, TorsionPoint, TorusPoint};
