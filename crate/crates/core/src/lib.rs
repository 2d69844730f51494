//! Exact combinatorics of levels in arrangements of hemispheres.
//!
//! A rank-`r` configuration of `n` vectors in general position cuts the sphere
//! `S^{r-1}` into faces. Each face is recorded by its sign vector (a
//! *dissection pattern*); the *f-matrix* counts faces by dimension and level.
//! Nontrivial linear dependencies give *dependency patterns* and the
//! *f\*-matrix*. The *g-matrix* of a pair `V -> W` records how the f-matrix
//! changes along a generic motion, and is computed here both algebraically
//! (from the two f-matrices) and geometrically (by tracking every mutation
//! along a straight-line motion with exact root isolation).
//!
//! Everything is exact: coordinates are arbitrary-precision rationals and no
//! floating point enters any computation whose result feeds a count.
//!
//! Module map:
//!
//! - [`exactnum`]: rationals, dense rational matrices, univariate polynomials
//!   with Sturm root isolation.
//! - [`poly2`]: bivariate polynomials for the generating-function identities.
//! - [`config`]: configurations, generators, Gale duality, minors.
//! - [`faces`]: pattern enumeration, f- and f\*-matrices.
//! - [`relations`]: antipodal, total-count, Dehn–Sommerville and f/f\* checks.
//! - [`gmatrix`]: the transforms `T` and `S`, inversion, closed forms,
//!   contraction/deletion sums.
//! - [`motion`]: mutation detection and classification, mutation-rich paths.
//! - [`span`]: exact ranks of sampled g- and f-matrix families.
//! - [`cli`]: the command-line front end used by the `levels` binary.

#![allow(clippy::manual_div_ceil, clippy::needless_range_loop)]

pub mod cli;
pub mod config;
pub mod exactnum;
pub mod faces;
pub mod gmatrix;
pub mod motion;
pub mod poly2;
pub mod relations;
pub mod span;

mod error;

pub use config::VectorConfig;
pub use error::{Error, Result};
pub use exactnum::{Mat, Rat, UniPoly};
pub use faces::{FMatrix, FStarMatrix, Sign, SignVector};
pub use gmatrix::{GMatrix, SmallGMatrix};
pub use motion::{MotionPath, MutationEvent};
pub use poly2::BiPoly;
pub use relations::RelationReport;
pub use span::SpanReport;
