//! Exact combinatorics of affine spherical varieties on the dual side:
//! based root data and coweight lattices, colors and their valuations,
//! Kashiwara crystals (Littelmann path construction, tensor products,
//! normality checking), the crystal attached to a spherical datum, graded
//! generating series in `q^{1/2}`, and a numeric layer for unramified
//! L-factors and Plancherel densities on the unitary dual torus.
//!
//! All combinatorial computation is exact (integer and rational
//! arithmetic); floating point enters only in the [`harmonic`] layer.

// Index loops over small matrices and tables read better than iterator
// chains here.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod crystal;
pub mod harmonic;
pub mod io;
pub mod lattice;
pub mod rng;
pub mod series;
pub mod spherical;
pub mod xcrystal;

pub use lattice::{Coweight, RootDatum, WeightFunctional, WeylGroup};
pub use num_rational::Rational64;
pub use spherical::{FrobeniusDatum, SphericalDatum};
pub use xcrystal::XCrystal;
