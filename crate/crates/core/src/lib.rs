//! Exact arithmetic on the hikes of a digraph.
//!
//! A *prime* is a simple cycle; a *hike* is a product of primes in which two
//! primes commute exactly when they share no vertex. Hikes form a trace
//! monoid, stored here in Foata normal form. On top of that the crate
//! provides Dirichlet convolution of functions on hikes, the classical
//! arithmetic functions (Möbius, von Mangoldt, Liouville), checks of the
//! determinant, permanent, MacMahon, trace and zeta identities they satisfy,
//! reconstruction of undirected graphs from the dependence graph of their
//! primes, and tools for digraphs sharing a non-zero spectrum.
//!
//! ```
//! use hike_forge::{fixtures, hike::enumerate_hikes, incidence::{mobius_fn, series_of}, primes::enumerate_primes};
//!
//! let cat = enumerate_primes(&fixtures::pentagram()).unwrap();
//! assert_eq!(cat.len(), 7);
//! let mu = series_of(&mobius_fn, &cat, 6).unwrap();
//! assert_eq!(mu.support().count(), 13);
//! assert!(enumerate_hikes(&cat, 4).unwrap().len() > 13);
//! ```
//!
//! Every computation is exact. Enumeration limits live in [`caps::Caps`] and
//! can be raised with the `HIKE_FORGE_CAP` environment variable.

pub mod arithmetic;
pub mod caps;
pub mod cli;
pub mod corpus;
pub mod cospectral;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod hike;
pub mod identities;
pub mod incidence;
pub mod iso;
pub mod linalg;
pub mod number_theory;
pub mod poly;
pub mod primes;
pub mod reconstruction;
pub mod report;
pub mod showcase;
pub mod ugraph;

pub use error::{HikeError, Result};
pub use graph::Digraph;
pub use hike::Hike;
pub use primes::{PrimeCatalog, PrimeId};
