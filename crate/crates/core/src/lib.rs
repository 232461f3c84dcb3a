//! Exact computations on linear representations of finite matrix groups:
//! isotropy strata, fixed loci, invariant rings, and rational expressions of
//! normal-form invariants in terms of restricted global invariants.
//!
//! All arithmetic is over the rationals; there is no floating point anywhere.

pub mod error;
pub mod exact;
pub mod group;
pub mod invariants;
pub mod poly;
pub mod rationality;
pub mod rep;
pub mod strata;

pub use error::{Error, Result};
pub use exact::{ExactMatrix, ExactScalar, ExactVector};
pub use group::{FiniteMatrixGroup, QuotientGroup, Subgroup, SubgroupLattice};
pub use poly::{MultiPoly, TruncatedSeries};
pub use rep::{ClosedSubgroupSpec, LinearSubspace, Representation};
