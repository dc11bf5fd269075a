//! Exact computations around twisted involutions in Coxeter groups.
//!
//! Given a Coxeter matrix and an involutive diagram automorphism, the crate
//! enumerates the ball of elements up to a length bound with exact algebraic
//! arithmetic, lists the twisted involutions together with their `phi`
//! invariant, realizes the Iwahori-Hecke algebra action on the module
//! spanned by twisted involutions, computes the associated polynomial table
//! by its two-variable recursion, and machine-checks the power-series
//! identity `R(u) * P_*(u) = P(u^2)` relating the twisted-involution series
//! to the Poincare series, along with the supporting polynomial identities.
//!
//! The crate works with explicit bounds everywhere: operations whose result
//! would leave the enumerated ball fail loudly with
//! [`Error::OutOfRange`](error::Error::OutOfRange) instead of truncating.

pub mod error;
pub mod exact;
pub mod hecke;
pub mod invol;
pub mod poly;
pub mod presentation;
pub mod presets;
pub mod report;
pub mod series;
pub mod store;
pub mod xtable;

pub use error::{Error, Result};
pub use invol::{is_twisted_involution, twisted_action, PhiTable, TwistedInvolutionSet};
pub use poly::IntPolynomial;
pub use presentation::{CoxeterPresentation, WirePresentation, MAX_RANK};
pub use series::{
    poincare, poincare_star, ratio_series, twisted_series, verify_series_identity, IdentityCheck,
    TruncatedSeries,
};
pub use store::{ElementStore, GroupElement, Side, DEFAULT_ELEMENT_LIMIT};
pub use xtable::XTable;
