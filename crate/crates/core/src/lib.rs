//! Computational toolkit for the representation theory of the free
//! orthogonal quantum groups `O_N^+` and the free unitary quantum groups
//! `U_N^+`.
//!
//! * [`chebyshev`]: dilated Chebyshev polynomials `u_n`, `q(t)`, quantum
//!   dimensions and the decay constant.
//! * [`orth`]: the fusion ring of `O_N^+` (labels are non-negative integers).
//! * [`unitary`]: the fusion ring of `U_N^+` indexed by the free monoid on two
//!   letters, and the alternating factorization of its characters.
//! * [`multiplier`]: coefficient tables of central multiplier nets, decay and
//!   ultracontractivity bounds, truncation certificates.
//! * [`spectral`]: the semicircle law of the fundamental character.

pub mod chebyshev;
pub mod error;
pub mod multiplier;
pub mod orth;
pub mod spectral;
pub mod unitary;

pub use error::{Error, Result};
