//! Symbolic calculus for words in the planar Hecke generators.
//!
//! The operators in play act on tempered distributions on the plane:
//!
//! * `R^e`, dilation by `p^(1/2)` raised to the power `e` (with the
//!   normalisation that makes it unitary on the relevant pairing),
//! * `tau[beta]`, multiplication by the radial chirp `exp(i pi beta |x|^2)`,
//! * `sigma_r`, the average of `tau[s / p^r]` over `s mod p^r`,
//! * `sigma_r^(l)`, the average of `tau[s p^(l-r)]` over `s mod p^r`.
//!
//! None of the distributions themselves appear here; this crate only tracks
//! the combinatorics.  A distribution is classified by its *level*: level `j`
//! means invariant under `tau[p^j]`.  Levels are nested upward, so level `j`
//! implies level `j'` for every `j' >= j` (a `tau[p^j']` is a power of
//! `tau[p^j]`).  Dilation shifts the level: `R^e` maps level `j` to `j - e`.
//! A chirp average `sigma_r` is a well defined operator only when its
//! defining sum does not depend on the chosen residue representatives, which
//! happens exactly when the input is invariant under `tau[1]`, i.e. has level
//! `<= 0`; its output is invariant under `tau[p^(-r)]`.  The superscripted
//! variant `sigma_r^(l)` likewise needs level `<= l`.
//!
//! Words are *order sensitive*.  A [`HeckeWord`] stores its symbols in
//! operator order: the **rightmost symbol acts first**, exactly as the
//! product is written on paper.  All rewriting identities used here hold for
//! the action on level-0 distributions and are derived in the doc comments
//! where they are applied.
//!
//! The central object is the normal form of powers of the planar Hecke
//! operator `T = R + sigma_1^(1) R^(-1) = R + R^(-1) sigma_1`: every power
//! `T^k` is a sum of terms `R^(k-2l) sigma_r` with nonnegative integer
//! coefficients `alpha_(k,l)^(r)`.  [`alpha_table`] computes those
//! coefficients exactly by recursion, [`expand_t_power`] by brute-force
//! distribution and rewriting, and the two are checked against each other in
//! the test suite.

mod alpha;
mod normal;
mod rewrite;
mod word;

pub use alpha::{alpha_rows, alpha_table, binomial, expand_t_power, AlphaRow};
pub use normal::NormalForm;
pub use rewrite::{reduce_by_relations, reduce_state, rewrite, rewrite_by_relations};
pub use word::{validate, validate_strict, DomainTrace, HeckeWord, WordError, WordSymbol};
