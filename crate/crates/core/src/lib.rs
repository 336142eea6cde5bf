//! Exact symbolic computation for the spectral parameterization of power
//! sums in GL(m|n)-type quantum matrix algebras.
//!
//! The crate works entirely over exact rational arithmetic. Its layers:
//!
//! - [`poly`]: sparse multivariate polynomials, Laurent in the deformation
//!   parameter `q`, over big rationals;
//! - [`ratfun`]: rational functions with cross-multiplication equality
//!   (no gcd reduction) and formal differentiation;
//! - [`series`]: truncated formal power series with rational-function
//!   coefficients;
//! - [`partition`]: partition combinatorics, hook sets and
//!   Littlewood-Richardson coefficients;
//! - [`symfunc`]: elementary/complete/power-sum polynomials on scaled
//!   alphabets, q-numbers, super generating series and Jacobi-Trudi
//!   determinants;
//! - [`spectral`]: the spectral images a_k, s_k, the power-sum weights
//!   d_i, d~_j, the residue function f(z) and the derivative function u(y);
//! - [`verify`]: the identity-verification engine producing structured
//!   pass/fail reports in exact-symbolic or seeded random-evaluation mode.
//!
//! The crate is `no_std` (with `alloc`); IO, timing and the command-line
//! front end live in the companion `qspectra-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod partition;
pub mod poly;
pub mod ratfun;
pub mod series;
pub mod spectral;
pub mod symfunc;
pub mod verify;

pub use error::Error;
pub use partition::Partition;
pub use poly::{MultiPoly, Rat, VarId, VarKind};
pub use ratfun::RationalFunction;
pub use series::TruncatedSeries;
pub use spectral::{SpectralContext, WeightVector};
pub use symfunc::Alphabet;
pub use verify::{IdentityId, VerificationReport, VerifyMode};
