//! Exact arithmetic in a real quadratic field, and the weight-24 eigenform
//! pair whose coefficients live there.
//!
//! The cusp space in weight 24 is two-dimensional, spanned by `E4^3 delta`
//! and `delta^2`.  The Hecke operator `T_2` acts on it with an irrational
//! splitting field, so the two normalised eigenforms have coefficients
//! `A + B sqrt(D)` with rational `A`, `B` and a fixed squarefree `D`.  All
//! comparisons here are sign-exact: no floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hecke::hecke_q;
use crate::series::{delta, eisenstein4, QSeries};

/// `a + b sqrt(d)` with `d > 1` squarefree, exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadElem {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

impl QuadElem {
    pub fn new(a: BigRational, b: BigRational, d: BigInt) -> Self {
        QuadElem { a, b, d }
    }

    pub fn from_rational(a: BigRational, d: BigInt) -> Self {
        QuadElem {
            a,
            b: BigRational::zero(),
            d,
        }
    }

    pub fn zero(d: BigInt) -> Self {
        Self::from_rational(BigRational::zero(), d)
    }

    pub fn add(&self, other: &QuadElem) -> QuadElem {
        assert_eq!(self.d, other.d);
        QuadElem {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.d.clone(),
        }
    }

    pub fn sub(&self, other: &QuadElem) -> QuadElem {
        assert_eq!(self.d, other.d);
        QuadElem {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.d.clone(),
        }
    }

    pub fn mul(&self, other: &QuadElem) -> QuadElem {
        assert_eq!(self.d, other.d);
        let droot = BigRational::from_integer(self.d.clone());
        QuadElem {
            a: &self.a * &other.a + &self.b * &other.b * &droot,
            b: &self.a * &other.b + &self.b * &other.a,
            d: self.d.clone(),
        }
    }

    /// The Galois conjugate `a - b sqrt(d)`.
    pub fn conj(&self) -> QuadElem {
        QuadElem {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Exact sign of `a + b sqrt(d)` as a real number: -1, 0, or 1.
    ///
    /// When the two terms disagree in sign the comparison `a^2` versus
    /// `b^2 d` decides, squaring being monotone on nonnegative reals.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            _ => {
                let a2 = &self.a * &self.a;
                let b2d = &self.b * &self.b * BigRational::from_integer(self.d.clone());
                match a2.cmp(&b2d) {
                    std::cmp::Ordering::Greater => sa,
                    std::cmp::Ordering::Less => sb,
                    std::cmp::Ordering::Equal => 0,
                }
            }
        }
    }

    /// True when both real embeddings of the element are `<= 0`, i.e. the
    /// element and its conjugate are nonpositive.
    pub fn both_embeddings_nonpositive(&self) -> bool {
        self.sign() <= 0 && self.conj().sign() <= 0
    }

    /// Renders as `A`, `B*sqrt(D)`, or `A + B*sqrt(D)` with exact rationals.
    pub fn display(&self) -> String {
        let rat = |r: &BigRational| {
            if r.is_integer() {
                r.to_integer().to_string()
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        };
        if self.b.is_zero() {
            return rat(&self.a);
        }
        let root = format!("{}*sqrt({})", rat(&self.b), self.d);
        if self.a.is_zero() {
            root
        } else if self.b.is_negative() {
            format!("{} - {}*sqrt({})", rat(&self.a), rat(&(-self.b.clone())), self.d)
        } else {
            format!("{} + {}", rat(&self.a), root)
        }
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Strips square factors: returns `(c, d)` with `n = c^2 d` and `d`
/// squarefree.  Trial division is fine at the sizes that occur here.
pub fn squarefree_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(n.is_positive(), "discriminant must be positive for a real field");
    let mut c = BigInt::one();
    let mut d = n.clone();
    let mut f = BigInt::from(2);
    loop {
        let f2 = &f * &f;
        if f2 > d {
            break;
        }
        while (&d % &f2).is_zero() {
            d /= &f2;
            c *= &f;
        }
        f += 1;
    }
    (c, d)
}

/// The weight-24 eigenform pair, exactly.
pub struct Weight24 {
    /// Squarefree part of the Hecke discriminant.
    pub d: BigInt,
    /// The two `T_2` eigenvalues `540 +- 12 sqrt(d)` (computed, not quoted).
    pub lambda: [QuadElem; 2],
    /// Echelon basis `h1 = q + O(q^3)`, `h2 = q^2 + O(q^3)` of the cusp
    /// space; the eigenforms are `h1 + lambda h2`.
    pub h1: QSeries,
    pub h2: QSeries,
}

impl Weight24 {
    /// Builds the cusp space at the given truncation and diagonalises `T_2`
    /// on it from scratch.
    pub fn build(trunc: usize) -> Weight24 {
        assert!(trunc >= 8, "need a few coefficients to pin the matrix down");
        let d = delta(trunc);
        let g1 = eisenstein4(trunc).pow(3).mul(&d);
        let g2 = d.pow(2);
        debug_assert_eq!(g2.weight, 24);

        // Echelonise: both start at q, g2 actually at q^2.
        let h2 = g2;
        let h1 = g1.sub(&h2.scale(g1.coeff(2)));
        debug_assert!(h1.coeff(1).is_one() && h1.coeff(2).is_zero());
        debug_assert!(h2.coeff(1).is_zero() && h2.coeff(2).is_one());

        // T_2 in the echelon basis, read off from the first two coefficients.
        let t2h1 = hecke_q(2, &h1);
        let t2h2 = hecke_q(2, &h2);
        let m11 = t2h1.coeff(1).clone();
        let m21 = t2h1.coeff(2) - t2h1.coeff(1) * h1.coeff(2);
        let m12 = t2h2.coeff(1).clone();
        let m22 = t2h2.coeff(2) - t2h2.coeff(1) * h1.coeff(2);
        // The echelon shape pins the first row: h1 has no q^2 term, and
        // T_2 h2 starts with the q^2 coefficient of h2. `x` below relies on
        // this.
        assert!(m11.is_zero() && m12.is_one());

        // Eigenvalues of [[m11, m12], [m21, m22]].
        let tr = &m11 + &m22;
        let det = &m11 * &m22 - &m12 * &m21;
        let disc = &tr * &tr - BigRational::from_integer(BigInt::from(4)) * &det;
        assert!(disc.is_integer() && disc.is_positive());
        let (c, dsf) = squarefree_part(&disc.to_integer());
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let lam = |sign: i64| {
            QuadElem::new(
                &tr * &half,
                BigRational::from_integer(&c * BigInt::from(sign)) * &half,
                dsf.clone(),
            )
        };
        let lambda = [lam(1), lam(-1)];

        // Eigenvector for lambda: m11 + x m12 = lambda gives
        // x = (lambda - m11) / m12, and m12 is nonzero since the matrix is
        // not diagonal over the rationals (disc is not a square).
        assert!(!m12.is_zero());

        Weight24 {
            d: dsf,
            lambda,
            h1,
            h2,
        }
    }

    /// Coefficient `b_n` of the eigenform for `lambda[which]`, exactly.
    pub fn coeff(&self, which: usize, n: usize) -> QuadElem {
        // f = h1 + x h2 with x = (lambda - m11)/m12; for this matrix
        // m11 = 0 and m12 = 1, but derive x honestly from lambda via the
        // stored eigenvalue: x = (lambda - m11)/m12 was simplified when the
        // matrix was computed, so recompute through the generic formula.
        let x = &self.x(which);
        let h1n = QuadElem::from_rational(self.h1.coeff(n).clone(), self.d.clone());
        let h2n = QuadElem::from_rational(self.h2.coeff(n).clone(), self.d.clone());
        h1n.add(&h2n.mul(x))
    }

    /// The mixing coefficient `x` with `f = h1 + x h2`.
    fn x(&self, which: usize) -> QuadElem {
        // With the echelon basis the first row of the matrix is (0, 1):
        // T_2 h1 has no q^1 term and T_2 h2 = h2(q^2 ...) starts at q.
        // Hence x = lambda.
        self.lambda[which].clone()
    }

    /// First mismatch of `T_p f = b_p f` through `trunc / p`, if any.
    pub fn eigen_defect(&self, which: usize, p: u32) -> Option<usize> {
        let tf_trunc = self.h1.trunc() / p as usize;
        let bp = self.coeff(which, p as usize);
        let scale = BigRational::from_integer(BigInt::from(p).pow(23));
        for n in 0..=tf_trunc {
            let mut t = self.coeff(which, n * p as usize);
            if n > 0 && n % p as usize == 0 {
                let back = self.coeff(which, n / p as usize);
                t = t.add(&QuadElem::new(
                    &back.a * &scale,
                    &back.b * &scale,
                    self.d.clone(),
                ));
            }
            if !t.sub(&bp.mul(&self.coeff(which, n))).is_zero() {
                return Some(n);
            }
        }
        None
    }

    /// Sign-exact Ramanujan verdict at `p` for one eigenform: whether
    /// `b_p^2 - 4 p^23 <= 0` holds in both real embeddings.
    pub fn ramanujan_holds(&self, which: usize, p: u32) -> bool {
        let bp = self.coeff(which, p as usize);
        let bound = QuadElem::from_rational(
            BigRational::from_integer(BigInt::from(4) * BigInt::from(p).pow(23)),
            self.d.clone(),
        );
        bp.mul(&bp).sub(&bound).both_embeddings_nonpositive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn sign_logic() {
        let d = BigInt::from(5);
        // 2 - sqrt(5) < 0, 3 - sqrt(5) > 0.
        assert_eq!(QuadElem::new(rat(2), rat(-1), d.clone()).sign(), -1);
        assert_eq!(QuadElem::new(rat(3), rat(-1), d.clone()).sign(), 1);
        assert_eq!(QuadElem::new(rat(0), rat(0), d.clone()).sign(), 0);
        // sqrt(5) - 9/4 < 0 since 5 < 81/16, and sqrt(5) - 11/5 > 0 since
        // 5 > 121/25.
        let frac = |n: i64, m: i64| BigRational::new(BigInt::from(n), BigInt::from(m));
        assert_eq!(QuadElem::new(frac(-9, 4), rat(1), d.clone()).sign(), -1);
        assert_eq!(QuadElem::new(frac(-11, 5), rat(1), d).sign(), 1);
    }

    #[test]
    fn squarefree_extraction() {
        let (c, d) = squarefree_part(&BigInt::from(720));
        assert_eq!((c, d), (BigInt::from(12), BigInt::from(5)));
        let (c, d) = squarefree_part(&BigInt::from(144169));
        assert_eq!((c, d), (BigInt::one(), BigInt::from(144169)));
    }

    #[test]
    fn hecke_discriminant_and_eigenvalues() {
        let w = Weight24::build(16);
        assert_eq!(w.d, BigInt::from(144169));
        // lambda = 540 +- 12 sqrt(144169).
        assert_eq!(w.lambda[0].a, rat(540));
        assert_eq!(w.lambda[0].b, rat(12));
        assert_eq!(w.lambda[1].b, rat(-12));
        // b_1 = 1 for both eigenforms.
        assert!(w.coeff(0, 1).sub(&QuadElem::from_rational(rat(1), w.d.clone())).is_zero());
    }

    #[test]
    fn conjugate_eigenforms_mirror_each_other() {
        let w = Weight24::build(32);
        for n in 1..=16 {
            let plus = w.coeff(0, n);
            let minus = w.coeff(1, n);
            assert_eq!(plus.conj(), minus, "coefficients at q^{n}");
        }
    }
}
