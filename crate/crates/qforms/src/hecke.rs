//! Hecke operators on q-expansions and the one-dimensional eigenforms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::series::{delta, eisenstein4, eisenstein6, QSeries};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QformError {
    #[error("no cusp form handling for weight {0}; supported: 12, 16, 18, 20, 22, 24, 26")]
    UnsupportedWeight(u32),
}

/// Applies `T_p` for prime `p` to a weight-`k` expansion:
/// `(T_p f)_n = f_(np) + p^(k-1) f_(n/p)`, the second term only when `p`
/// divides `n`.  The result is trustworthy only through `trunc / p`, and is
/// truncated there.
pub fn hecke_q(p: u32, f: &QSeries) -> QSeries {
    assert!(p >= 2, "T_p needs a prime index");
    let out_trunc = f.trunc() / p as usize;
    let scale = BigRational::from_integer(BigInt::from(p).pow(f.weight - 1));
    let mut coeffs = Vec::with_capacity(out_trunc + 1);
    for n in 0..=out_trunc {
        let mut c = f.coeff(n * p as usize).clone();
        if n % p as usize == 0 && n > 0 {
            c += f.coeff(n / p as usize) * &scale;
        } else if n == 0 {
            // The constant term also picks up p^(k-1) f_0; harmless for cusp
            // forms, needed so Eisenstein series are eigenforms too.
            c += f.coeff(0) * &scale;
        }
        coeffs.push(c);
    }
    QSeries::from_coeffs(f.weight, coeffs)
}

/// The unique normalised cusp form for the weights where the cusp space is
/// one-dimensional.
pub fn eigenform(weight: u32, trunc: usize) -> Result<QSeries, QformError> {
    let d = delta(trunc);
    let f = match weight {
        12 => d,
        16 => eisenstein4(trunc).mul(&d),
        18 => eisenstein6(trunc).mul(&d),
        20 => eisenstein4(trunc).pow(2).mul(&d),
        22 => eisenstein4(trunc).mul(&eisenstein6(trunc)).mul(&d),
        26 => eisenstein4(trunc).pow(2).mul(&eisenstein6(trunc)).mul(&d),
        other => return Err(QformError::UnsupportedWeight(other)),
    };
    debug_assert!(f.coeff(0).is_zero());
    debug_assert!(f.coeff(1) == &BigRational::from_integer(BigInt::from(1)));
    Ok(f)
}

/// Weights whose cusp space is one-dimensional, in increasing order.
pub const DIM_ONE_WEIGHTS: [u32; 6] = [12, 16, 18, 20, 22, 26];

/// Checks `T_p f = b_p f` coefficient by coefficient through `trunc / p`.
/// Returns the first mismatching index, if any.
pub fn eigen_defect(p: u32, f: &QSeries) -> Option<usize> {
    let tf = hecke_q(p, f);
    let bp = f.coeff(p as usize);
    (0..=tf.trunc()).find(|&n| tf.coeff(n) != &(bp * f.coeff(n)))
}

/// The exact Ramanujan gap `4 p^(k-1) - b_p^2` for an integral eigenform;
/// nonnegative exactly when the coefficient bound holds at `p`.
pub fn ramanujan_gap(p: u32, f: &QSeries) -> BigInt {
    let bp = f.int_coeff(p as usize);
    BigInt::from(4) * BigInt::from(p).pow(f.weight - 1) - &bp * &bp
}
