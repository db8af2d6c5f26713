//! Exact-arithmetic reachability analysis for non-homogeneous linear
//! recurrences.
//!
//! A recurrence of order `L` is given by initial terms `E_1..E_L` and the
//! relation `E_i = f_{i,0} + f_{i,1} E_{i-1} + ... + f_{i,L} E_{i-L}`, where
//! each coefficient `f_{i,m}` is a polynomial in the index `i` with rational
//! coefficients. Given a target rational `r` and a depth `N`, this crate
//! decides whether some term `E_k` with `k <= N` equals `r`, by three
//! mutually cross-checking mechanisms:
//!
//! 1. direct iteration of the recurrence ([`recurrence`]),
//! 2. a determinant family `omega_i` with `det = E_i`, whose shifted partial
//!    products vanish exactly when the target is hit ([`determinant`]),
//! 3. a linear-system encoding with Cramer indicators, orthogonality
//!    witnesses and rank certificates ([`certificate`]).
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating-point path and every verdict is exact at the stated depth.

pub mod certificate;
pub mod determinant;
pub mod fixtures;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod recurrence;
pub mod specfile;
pub mod verify;

pub use matrix::{ExactMatrix, ExactVector, LinalgError};
pub use poly::IndexPolynomial;
pub use rational::Rational;
pub use recurrence::{RecurrenceSpec, TermSequence};
