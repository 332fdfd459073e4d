//! Exact q-expansion arithmetic for level-one modular forms.
//!
//! Everything here is integer or rational arithmetic on truncated
//! q-expansions: Eisenstein series, the discriminant form, products giving
//! the normalised cusp eigenforms in the weights where the cusp space has
//! dimension one, the two-dimensional weight 24 space with its quadratic
//! irrationalities handled exactly, and the Hecke operator `T_p` acting on
//! expansions.  The point of the crate is the coefficient bound
//! `b_p^2 <= 4 p^(k-1)`, which [`ramanujan_check`] verifies with no floating
//! point involved anywhere.

mod check;
mod hecke;
mod quad;
mod series;

pub use check::{primes_up_to, ramanujan_check};
pub use hecke::{eigen_defect, eigenform, hecke_q, ramanujan_gap, QformError, DIM_ONE_WEIGHTS};
pub use quad::{squarefree_part, QuadElem, Weight24};
pub use series::{delta, eisenstein4, eisenstein6, sigma_power, QSeries};
