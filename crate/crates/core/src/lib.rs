//! Exact symbolic computation for Hecke-operator generating series.
//!
//! Everything in this crate is exact: scalars are arbitrary-precision
//! rationals, polynomials are sparse Laurent polynomials in a fixed
//! variable table, and rational functions never go near floating point.
//! On top of that arithmetic the crate builds:
//!
//! * closed forms for delta-indexed sequences and their resummation
//!   ([`series`]),
//! * the spherical-map images of the symplectic Hecke generators and the
//!   generating series they satisfy ([`spherical`]),
//! * Hecke-algebra elements with exact polynomial coefficients, the inverse
//!   of the spherical map on symmetric elements, and Newton polygons of the
//!   resulting polynomials ([`hecke`]),
//! * the convolution-type series identities and their verification
//!   ([`rankin`]),
//! * parametrized local factors, Satake-parameter bookkeeping, and Hodge
//!   number computations for lifted forms ([`lfactor`]).
//!
//! The [`engine`] module caches the expensive shared artifacts so that
//! verification suites and tests can reuse them.

pub mod vars;
pub mod poly;
pub mod ratfn;
pub mod parse;
pub mod series;
pub mod spherical;
pub mod transcribe;
pub mod hecke;
pub mod lfactor;
pub mod rankin;
pub mod engine;

pub use hecke::{Alphabet, HeckeElement, HeckeError, HeckeSeriesPoly, NewtonPolygon};
pub use poly::{ArithError, MultiPoly, Rat};
pub use ratfn::RationalFn;
pub use series::{DeltaSeries, SeriesError};
pub use spherical::{OmegaImages, SphericalContext, SphericalError, VarGroup, WeylElement};
pub use vars::{Monomial, VarTable};
