//! Cycle-matroid rank of finite graphs and weighted graphings.
//!
//! The crate is organised around one quantity: the normalized rank of an
//! edge set, `rho(X) = (|V| - c(X)) / |V|`, where `c(X)` counts the
//! connected components of `(V, X)`. Everything else builds on it:
//!
//! * [`graph`] holds finite graphs, edge sets, exact rank computations and
//!   an exhaustive submodularity checker.
//! * [`partition`] holds weighted point spaces, partitions with
//!   infinite-class flags, the class-size functional `psi`, and the
//!   re-randomization machinery behind the supermodularity checks.
//! * [`graphing`] couples a graph with a stationary node measure and
//!   relates normalized rank to edge measure.
//! * [`oracle`] and [`families`] provide local (neighborhood-query) access
//!   to large or infinite bounded-degree graphs.
//! * [`estimator`] estimates total rank from a local oracle with an
//!   explicit sample-size plan.
//! * [`minorize`] builds additive measures sitting below `rho`.
//!
//! Exact quantities are rational throughout; only the sampling estimator
//! works in floating point.

#![forbid(unsafe_code)]

pub mod error;
pub mod estimator;
pub mod families;
pub mod generate;
pub mod graph;
pub mod graphing;
pub mod io;
pub mod minorize;
pub mod oracle;
pub mod partition;
pub mod ratio;
pub mod stream;
pub mod unionfind;

pub use error::Error;
pub use ratio::Rational;
