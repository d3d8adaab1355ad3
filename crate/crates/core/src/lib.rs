//! Exact entropy optimization over couplings with fixed marginals.
//!
//! A coupling of distributions `P` (length `n`) and `Q` (length `m`) is an
//! `n x m` matrix of nonnegative rationals with row sums `P` and column sums
//! `Q`; together they form the transportation polytope `C(P, Q)`. This crate
//! provides:
//!
//! * exact rational distributions and couplings with certified entropy
//!   enclosures ([`measures`], [`Entropy`]),
//! * vertex enumeration of `C(P, Q)` through spanning-tree bases
//!   ([`polytope`]),
//! * global minimization of `H(X,Y)` and the combinatorial decision
//!   `H(X,Y) = H(P)` ([`minentropy`]),
//! * maximization of `I(X;Y)` over channels with a fixed input and
//!   `m` outputs ([`channel`]),
//! * reductions from Subset Sum and 3-Partition with certificate checking
//!   ([`reductions`]),
//! * variation-of-information pseudometrics and total variation
//!   ([`metrics`]),
//! * a JSON instance format and command dispatch ([`cli`]).
//!
//! All decisions are exact. Entropy values are intervals `[lower, upper]`
//! guaranteed to contain the true value; comparisons that cannot be
//! resolved at the requested width are refined up to `2^-200`.
//!
//! ```
//! use transport_entropy::{measures::Distribution, polytope::TransportationPolytope};
//! use transport_entropy::minentropy::{min_joint_entropy_exact, SolverOptions};
//!
//! let p = Distribution::from_weights([1u64, 3, 5]).unwrap();
//! let q = Distribution::from_weights([2u64, 4, 3]).unwrap();
//! let poly = TransportationPolytope::new(p, q);
//! let r = min_joint_entropy_exact(&poly, SolverOptions::default());
//! assert!(r.optimal);
//! assert!(poly.is_member(&r.best));
//! ```

pub mod channel;
pub mod cli;
pub mod entropy;
pub mod error;
pub mod measures;
pub mod metrics;
pub mod minentropy;
pub mod polytope;
pub mod reductions;
mod search;

pub use entropy::{log2_integer, Entropy, Precision};
pub use error::{Error, Result};
pub use measures::{Coupling, Distribution, Rational};
