//! Deciding causal relation between events of a (2+1)-dimensional globally
//! hyperbolic spacetime with Cauchy surface R², through Khovanov and annular
//! Khovanov homology over Z/2 of the pair of skies.
//!
//! The pipeline:
//!
//! * [`skies`] turns two Minkowski events into a 2-strand braid word (or
//!   reports that their skies meet), and classifies the pair by the metric.
//! * [`linkdiag`] closes braids in the annulus, planarizes them and adds the
//!   meridian of the solid torus.
//! * [`cube`] builds the cube-of-resolutions complexes, graded by `(j)` or
//!   `(j, k)`, and [`gf2`] computes ranks over the two-element field.
//! * [`invariants`] turns complexes into graded dimensions.
//! * [`causality`] compares against the unlinked models `U2` and `P3`.

pub mod causality;
pub mod cli;
pub mod cube;
pub mod error;
pub mod gf2;
pub mod invariants;
pub mod linkdiag;
pub mod skies;

pub use error::{Error, Result};
