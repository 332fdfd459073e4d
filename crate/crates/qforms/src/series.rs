//! Truncated q-expansions with exact rational coefficients.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A modular form (or any formal series) known through `q^trunc`.
///
/// `coeffs[n]` is the coefficient of `q^n`, exact.  The weight rides along
/// so Hecke operators know their normalisation; purely formal manipulations
/// ignore it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub weight: u32,
    coeffs: Vec<BigRational>,
}

impl QSeries {
    pub fn from_coeffs(weight: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "need at least the constant term");
        QSeries { weight, coeffs }
    }

    pub fn zero(weight: u32, trunc: usize) -> Self {
        QSeries {
            weight,
            coeffs: vec![BigRational::zero(); trunc + 1],
        }
    }

    /// Highest power of `q` this expansion is valid through.
    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigRational {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Drops knowledge beyond `q^trunc`.
    pub fn truncate(&self, trunc: usize) -> QSeries {
        let take = trunc.min(self.trunc());
        QSeries {
            weight: self.weight,
            coeffs: self.coeffs[..=take].to_vec(),
        }
    }

    /// Sum, valid through the shorter truncation. Weights must match: adding
    /// forms of different weights is a bug in the caller.
    pub fn add(&self, other: &QSeries) -> QSeries {
        assert_eq!(self.weight, other.weight, "weight mismatch in add");
        let n = self.trunc().min(other.trunc());
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] + &other.coeffs[i])
            .collect();
        QSeries {
            weight: self.weight,
            coeffs,
        }
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        assert_eq!(self.weight, other.weight, "weight mismatch in sub");
        let n = self.trunc().min(other.trunc());
        let coeffs = (0..=n)
            .map(|i| &self.coeffs[i] - &other.coeffs[i])
            .collect();
        QSeries {
            weight: self.weight,
            coeffs,
        }
    }

    pub fn scale(&self, factor: &BigRational) -> QSeries {
        QSeries {
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product, valid through the shorter truncation; weights add.
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let n = self.trunc().min(other.trunc());
        let mut coeffs = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        QSeries {
            weight: self.weight + other.weight,
            coeffs,
        }
    }

    pub fn pow(&self, exp: u32) -> QSeries {
        let mut out = QSeries {
            weight: 0,
            coeffs: {
                let mut c = vec![BigRational::zero(); self.trunc() + 1];
                c[0] = BigRational::one();
                c
            },
        };
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }

    /// True when every coefficient through the truncation is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// The coefficient of `q^n` as a big integer; panics when not integral.
    pub fn int_coeff(&self, n: usize) -> BigInt {
        let c = &self.coeffs[n];
        assert!(c.is_integer(), "coefficient of q^{n} is not an integer: {c}");
        c.to_integer()
    }
}

/// Sum of the `k`-th powers of the divisors of `n >= 1`.
pub fn sigma_power(n: u64, k: u32) -> BigUint {
    assert!(n >= 1);
    let mut total = BigUint::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigUint::from(d).pow(k);
            let e = n / d;
            if e != d {
                total += BigUint::from(e).pow(k);
            }
        }
        d += 1;
    }
    total
}

/// Eisenstein series of weight 4: `1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein4(trunc: usize) -> QSeries {
    eisenstein(4, 240, trunc)
}

/// Eisenstein series of weight 6: `1 - 504 sum sigma_5(n) q^n`.
pub fn eisenstein6(trunc: usize) -> QSeries {
    eisenstein(6, -504, trunc)
}

fn eisenstein(weight: u32, constant: i64, trunc: usize) -> QSeries {
    let mut coeffs = Vec::with_capacity(trunc + 1);
    coeffs.push(BigRational::one());
    for n in 1..=trunc {
        let s = BigInt::from(sigma_power(n as u64, weight - 1));
        coeffs.push(BigRational::from_integer(s * BigInt::from(constant)));
    }
    QSeries::from_coeffs(weight, coeffs)
}

/// The discriminant cusp form `(E4^3 - E6^2) / 1728`, weight 12, leading
/// coefficient 1 at `q`.
pub fn delta(trunc: usize) -> QSeries {
    let e4 = eisenstein4(trunc);
    let e6 = eisenstein6(trunc);
    let num = e4.pow(3).sub(&e6.pow(2));
    num.scale(&BigRational::from_integer(BigInt::from(1728)).recip())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(sigma_power(1, 3), 1u32.into());
        assert_eq!(sigma_power(6, 1), 12u32.into());
        assert_eq!(sigma_power(6, 3), (1u32 + 8 + 27 + 216).into());
        assert_eq!(sigma_power(97, 5), (1u64 + 97u64.pow(5)).into());
    }

    #[test]
    fn eisenstein_leading_terms() {
        let e4 = eisenstein4(3);
        assert_eq!(*e4.coeff(0), int(1));
        assert_eq!(*e4.coeff(1), int(240));
        assert_eq!(*e4.coeff(2), int(2160));
        assert_eq!(*e4.coeff(3), int(6720));

        let e6 = eisenstein6(3);
        assert_eq!(*e6.coeff(0), int(1));
        assert_eq!(*e6.coeff(1), int(-504));
        assert_eq!(*e6.coeff(2), int(-16632));
        assert_eq!(*e6.coeff(3), int(-122976));
    }

    #[test]
    fn delta_is_integral_with_tau_values() {
        let d = delta(12);
        assert!(d.is_integral());
        assert_eq!(d.int_coeff(0), BigInt::zero());
        let tau = [
            1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
        ];
        for (n, t) in tau.iter().enumerate() {
            assert_eq!(d.int_coeff(n + 1), BigInt::from(*t), "tau({})", n + 1);
        }
    }

    #[test]
    fn truncation_respects_the_shorter_operand() {
        let e4 = eisenstein4(10);
        let e6 = eisenstein6(4);
        let prod = e4.mul(&e6);
        assert_eq!(prod.trunc(), 4);
        assert_eq!(prod.weight, 10);
        assert_eq!(*prod.coeff(1), int(240 - 504));
    }
}
