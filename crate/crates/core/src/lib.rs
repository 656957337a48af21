//! Exact, certificate-producing decompositions of group elements into
//! conjugates of a fixed element, together with a finite-group engine for
//! widths with respect to conjugation-invariant generating sets.
//!
//! The crate is organised by ambient group:
//!
//! * [`dyadic`]: exact dyadic and rational numbers.
//! * [`thompson`]: Thompson's group `F` realised as `PL_2([0,1])`.
//! * [`displacement`]: generic f-commutator identities and the six-conjugate
//!   pipeline for `F'`.
//! * [`linear`]: `SL_n(Z)` and `SL_n(F_p)`.
//! * [`freeprod`]: free products of cyclic groups and palindromes.
//! * [`finwidth`]: permutation groups, widths, norms and chains.
//!
//! Every decomposition is returned as a [`ConjugateCertificate`] that can be
//! re-verified by exact multiplication.

pub mod displacement;
pub mod dyadic;
pub mod error;
pub mod finwidth;
pub mod freeprod;
pub mod group;
pub mod linear;
pub mod thompson;

pub use displacement::{CommutatorList, ConjugateCertificate, FCommutatorWitness};
pub use dyadic::{Dyadic, Rational};
pub use error::{Error, Result};
pub use group::GroupElement;
