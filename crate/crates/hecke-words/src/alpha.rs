//! The coefficient table of Hecke powers.
//!
//! Writing `T = R + R^(-1) sigma_1`, every power has the normal form
//!
//! ```text
//!     T^k = sum over l of  R^(k-2l) ( alpha_(k,l)^(0) I
//!                                   + alpha_(k,l)^(1) sigma_1
//!                                   + ... + alpha_(k,l)^(l) sigma_l ).
//! ```
//!
//! Multiplying a reduced term on the right by the two summands of `T` gives
//!
//! ```text
//!     R^(k-2l) sigma_r . R            = R^(k+1-2l) sigma_(r-1)     (r >= 1)
//!     R^(k-2l) sigma_0 . R            = R^(k+1-2l) sigma_0
//!     R^(k-2l) sigma_r . R^(-1) sigma_1 = R^(k+1-2(l+1)) sigma_(r+1),
//! ```
//!
//! so the coefficients obey, with rows indexed by `l` and depths by `r`,
//!
//! ```text
//!     alpha_(k+1,l)^(0) = alpha_(k,l)^(0) + alpha_(k,l)^(1)
//!     alpha_(k+1,l)^(r) = alpha_(k,l)^(r+1) + alpha_(k,l-1)^(r-1)   (r >= 1)
//! ```
//!
//! starting from `alpha_(0,0)^(0) = 1`.  [`alpha_table`] iterates this
//! exactly over big integers; [`expand_t_power`] instead distributes the
//! product into `2^k` words and reduces each one with the pattern rewriter,
//! which is the slow oracle the table is tested against.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::normal::NormalForm;
use crate::rewrite::reduce_by_relations;
use crate::word::{HeckeWord, WordSymbol};

/// One table entry, in the flattened export order `(k, l, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaRow {
    pub k: u32,
    pub ell: u32,
    pub r: u32,
    pub alpha: BigUint,
}

/// Normal forms of `T^0 .. T^k_max` by the coefficient recursion.
pub fn alpha_table(k_max: u32) -> Vec<NormalForm> {
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    let mut current = NormalForm::new(0);
    current.add(0, 0, BigUint::from(1u32));
    rows.push(current);
    for k in 0..k_max {
        let prev = rows.last().unwrap();
        let mut next = NormalForm::new(k + 1);
        for ell in 0..=(k + 1) {
            // r = 0 row: sigma_0 . R and sigma_1 . R both land on depth 0.
            let amount = prev.coeff(ell, 0) + prev.coeff(ell, 1);
            next.add(ell, 0, amount);
            for r in 1..=ell {
                let mut amount = if r < ell { prev.coeff(ell, r + 1) } else { BigUint::zero() };
                if ell >= 1 && r >= 1 {
                    amount += prev.coeff(ell - 1, r - 1);
                }
                next.add(ell, r, amount);
            }
        }
        rows.push(next);
    }
    rows
}

/// The table flattened to `(k, l, r, alpha)` rows with `alpha != 0`, ordered
/// lexicographically. This is the layout the table export uses.
pub fn alpha_rows(k_max: u32) -> Vec<AlphaRow> {
    alpha_table(k_max)
        .iter()
        .flat_map(|nf| {
            let k = nf.k;
            nf.terms()
                .map(move |(&(ell, r), alpha)| AlphaRow {
                    k,
                    ell,
                    r,
                    alpha: alpha.clone(),
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Expands `T^k = (R + R^(-1) sigma_1)^k` distributively into `2^k` words,
/// reduces each word independently, and accumulates the terms.  Exponential,
/// meant as the oracle for [`alpha_table`] at small `k`.
pub fn expand_t_power(k: u32) -> NormalForm {
    assert!(k <= 24, "2^k words; keep the oracle under control");
    let mut nf = NormalForm::new(k);
    for mask in 0u64..(1u64 << k) {
        let mut symbols = Vec::with_capacity(2 * k as usize);
        for bit in 0..k {
            if mask >> bit & 1 == 0 {
                symbols.push(WordSymbol::r());
            } else {
                symbols.push(WordSymbol::r_inv());
                symbols.push(WordSymbol::sigma(1));
            }
        }
        let word = HeckeWord::on_level_zero(symbols);
        let (e, r) = reduce_by_relations(&word).expect("every product word is valid on level 0");
        let ell = i64::from(k) - e;
        assert!(ell >= 0 && ell % 2 == 0, "exponent parity of a degree-{k} word");
        let ell = u32::try_from(ell / 2).unwrap();
        nf.add(ell, r, BigUint::from(1u32));
    }
    nf
}

/// Exact binomial coefficient, used by tests for the row-sum identity.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut value = BigUint::from(1u32);
    for i in 0..k.min(n - k) {
        value = value * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    value
}
