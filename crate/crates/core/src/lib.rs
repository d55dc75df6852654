//! Statistical distances, finite-n equivalence/contiguity diagnostics and
//! explicit couplings for Bernoulli product measures and the inhomogeneous
//! random graphs `G(n, (p_ij))` built from them.
//!
//! The crate is organized around four pieces:
//!
//! * [`measures`] — the distance kernel: the Bernoulli discrepancy function
//!   `rho`, Hellinger integrals/distances of product measures, total-variation
//!   bounds, and an exact enumeration oracle for small products.
//! * [`criteria`] — finite-n diagnostics for the vanishing / bounded /
//!   tail-ratio conditions that govern asymptotic equivalence and contiguity
//!   of indicator sequences, plus partial sums for the product-measure
//!   dichotomy on a fixed infinite pair.
//! * [`models`] — the sparse random-graph model zoo: kernels, link functions
//!   and vertex ensembles producing edge-probability vectors and aligned
//!   pairs of them.
//! * [`coupling`] — graph samplers, the edgewise maximal coupling, the
//!   edge-count coupling of homogeneous graphs, exact binomial total
//!   variation and its normal limit.
//!
//! The distance kernel in [`measures`] and [`enumeration`] is generic over
//! the scalar type through [`Scalar`]; everything re-exported at the crate
//! root is the concrete `f64` instantiation.

pub mod binom;
pub mod coupling;
pub mod criteria;
pub mod enumeration;
mod error;
pub mod measures;
pub mod models;
pub mod seed;
pub mod trend;
mod util;

pub use error::Error;
pub use measures::{DistanceReport, Prob, ProbPair, ProbVector};

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Scalar type the distance kernel is generic over (`f32`, `f64`, ...).
pub trait Scalar: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

impl<T> Scalar for T where T: Float + FromPrimitive + Debug + Display + Send + Sync + 'static {}

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = std::result::Result<T, E>;
