use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

/// A sum of terms `R^(k-2l) sigma_r` with nonnegative integer coefficients,
/// the shape every power `T^k` of the planar Hecke operator reduces to.
///
/// Coefficients are indexed by `(l, r)` with `0 <= l <= k` and `0 <= r <= l`;
/// `r = 0` means the bare dilation `R^(k-2l)` (`sigma_0` is the identity).
/// Absent keys are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    pub k: u32,
    coeffs: BTreeMap<(u32, u32), BigUint>,
}

impl NormalForm {
    pub fn new(k: u32) -> Self {
        NormalForm {
            k,
            coeffs: BTreeMap::new(),
        }
    }

    /// The normal form of a single reduced word `R^e sigma_r`, using the
    /// smallest degree `k` whose term grid contains it: `k = max(e + 2r, -e)`.
    pub fn single_term(e: i64, r: u32) -> Self {
        let k = (e + 2 * i64::from(r)).max(-e);
        debug_assert!(k >= 0 && (k - e) % 2 == 0);
        let k = u32::try_from(k).expect("degree fits in u32");
        let ell = u32::try_from((i64::from(k) - e) / 2).expect("l fits in u32");
        let mut nf = NormalForm::new(k);
        nf.add(ell, r, BigUint::from(1u32));
        nf
    }

    pub fn add(&mut self, ell: u32, r: u32, amount: BigUint) {
        if amount.is_zero() {
            return;
        }
        debug_assert!(ell <= self.k && r <= ell, "term outside the (l, r) grid");
        *self.coeffs.entry((ell, r)).or_default() += amount;
    }

    pub fn coeff(&self, ell: u32, r: u32) -> BigUint {
        self.coeffs.get(&(ell, r)).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `((l, r), alpha)`, ordered by `(l, r)`.
    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigUint)> {
        self.coeffs.iter().filter(|(_, a)| !a.is_zero())
    }

    /// The dilation exponent of the `(l, r)` term.
    pub fn exponent(&self, ell: u32) -> i64 {
        i64::from(self.k) - 2 * i64::from(ell)
    }

    /// Sum of the coefficients in row `l` over all `r`.
    pub fn row_sum(&self, ell: u32) -> BigUint {
        self.coeffs
            .range((ell, 0)..=(ell, ell))
            .map(|(_, a)| a)
            .sum()
    }

    /// Sum of every coefficient.  For `T^k` this is `2^k`: each of the two
    /// summands of `T` contributes total coefficient mass 1 and rewriting
    /// moves mass around without creating or destroying it.
    pub fn total_mass(&self) -> BigUint {
        self.coeffs.values().sum()
    }

    /// Checks the support constraint `2l - k - r <= 0` for every nonzero
    /// term, i.e. that each term maps level 0 into level `<= 0`: `sigma_r`
    /// outputs level `-r`, and `R^(k-2l)` then shifts it to `2l - k - r`.
    pub fn support_in_level_zero(&self) -> bool {
        self.terms().all(|(&(ell, r), _)| {
            2 * i64::from(ell) - i64::from(self.k) - i64::from(r) <= 0
        })
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(ell, r), alpha) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{alpha} ")?;
            let e = self.exponent(ell);
            match (e, r) {
                (0, 0) => write!(f, "I")?,
                (0, _) => write!(f, "sigma_{r}")?,
                (1, 0) => write!(f, "R")?,
                (_, 0) => write!(f, "R^{e}")?,
                (1, _) => write!(f, "R sigma_{r}")?,
                (_, _) => write!(f, "R^{e} sigma_{r}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
