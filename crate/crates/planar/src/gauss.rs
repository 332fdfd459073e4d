//! Closed-form Gaussian integrals over the plane.
//!
//! Everything reduces to the one-variable identity
//!
//! ```text
//! ∫ exp(iπ z t² + 2iπ w t) dt = (-iz)^(-1/2) exp(-iπ w²/z),    Im z > 0,
//! ```
//!
//! assembled in pairs so that only the unambiguous square `(-iz)^(-1)` ever
//! appears; no square-root branch enters any exported value. The frequency
//! `w` may be complex: the identity is obtained by completing the square and
//! both sides are entire in `w`.
//!
//! Moments follow by differentiating under the integral sign: each factor of
//! `t` is `(2iπ)^(-1) ∂/∂w`, which turns the base value into a polynomial
//! prefactor with the recursion
//!
//! ```text
//! Q_0 = 1,    Q_{k+1}(w) = (2iπ)^(-1) Q_k'(w) - (w/z) Q_k(w).
//! ```
//!
//! The two-dimensional moment is then a product of one-dimensional ones,
//! since `|x|²` and `⟨w, x⟩` split coordinate-wise.

use crate::poly::Poly2;
use num_complex::Complex64;

const TAU: f64 = std::f64::consts::TAU;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `∫ exp(iπ z |x|² + 2iπ ⟨w, x⟩) dx = (-iz)^(-1) exp(-iπ (w1² + w2²)/z)`.
///
/// Requires `Im z > 0`, or `Im z = 0` with `z != 0`, in which case the value
/// is the Fresnel (oscillatory) continuation: the same formula, which is the
/// limit of the absolutely convergent case from the upper half-plane.
///
/// Note the exponent carries the bilinear square `w1² + w2²`, not `|w|²`;
/// the two differ for complex `w`.
pub fn gauss_base(z: Complex64, w: [Complex64; 2]) -> Complex64 {
    assert!(
        z.im > 0.0 || (z.im == 0.0 && z.re != 0.0),
        "gauss_base needs Im z > 0, or real z != 0 for the Fresnel reading"
    );
    let minus_iz = c64(0.0, -1.0) * z;
    let wsq = w[0] * w[0] + w[1] * w[1];
    minus_iz.finv() * (c64(0.0, -std::f64::consts::PI) * wsq / z).exp()
}

/// Prefactor polynomials `Q_0 .. Q_kmax` in one variable `w`, as coefficient
/// vectors (index = power of `w`), for a fixed Gaussian parameter `z`.
fn prefactor_polys(z: Complex64, kmax: u32) -> Vec<Vec<Complex64>> {
    let inv_z = z.finv();
    let inv_2ipi = c64(0.0, TAU).finv();
    let mut polys: Vec<Vec<Complex64>> = Vec::with_capacity(kmax as usize + 1);
    polys.push(vec![c64(1.0, 0.0)]);
    for k in 0..kmax as usize {
        let prev = &polys[k];
        let mut next = vec![c64(0.0, 0.0); prev.len() + 1];
        for (t, &coef) in prev.iter().enumerate() {
            // (2iπ)^(-1) d/dw drops the power by one.
            if t > 0 {
                next[t - 1] += inv_2ipi * coef * t as f64;
            }
            // -(w/z) raises it by one.
            next[t + 1] -= inv_z * coef;
        }
        polys.push(next);
    }
    polys
}

fn eval_poly(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * w + c;
    }
    acc
}

/// Moment table for a fixed `(z, w)`: all `∫ x1^i x2^j exp(iπ z |x|² + 2iπ ⟨w, x⟩) dx`
/// with `i <= imax`, `j <= jmax`. Strictly `Im z > 0` here.
pub struct MomentTable {
    base: Complex64,
    q1: Vec<Complex64>,
    q2: Vec<Complex64>,
}

impl MomentTable {
    pub fn new(z: Complex64, w: [Complex64; 2], imax: u32, jmax: u32) -> Self {
        assert!(z.im > 0.0, "moments need Im z > 0");
        let kmax = imax.max(jmax);
        let polys = prefactor_polys(z, kmax);
        let q1 = polys.iter().map(|p| eval_poly(p, w[0])).collect::<Vec<_>>();
        let q2 = polys.iter().map(|p| eval_poly(p, w[1])).collect::<Vec<_>>();
        MomentTable {
            base: gauss_base(z, w),
            q1,
            q2,
        }
    }

    pub fn moment(&self, i: u32, j: u32) -> Complex64 {
        self.q1[i as usize] * self.q2[j as usize] * self.base
    }
}

/// One-off moment `∫ x1^i x2^j exp(iπ z |x|² + 2iπ ⟨w, x⟩) dx`.
pub fn gauss_moment(z: Complex64, w: [Complex64; 2], i: u32, j: u32) -> Complex64 {
    MomentTable::new(z, w, i, j).moment(i, j)
}

/// `∫ poly(x) exp(iπ z |x|² + 2iπ ⟨w, x⟩) dx`, term by term through one table.
pub fn integrate_poly(poly: &Poly2, z: Complex64, w: [Complex64; 2]) -> Complex64 {
    if poly.is_zero() {
        return c64(0.0, 0.0);
    }
    let table = MomentTable::new(z, w, poly.max_exponent(0), poly.max_exponent(1));
    let mut acc = c64(0.0, 0.0);
    for (&(i, j), &coef) in poly.terms() {
        acc += coef * table.moment(i, j);
    }
    acc
}

/// Closed form for the angular moment
/// `∫ (x1 + i x2)^m exp(iπ z |x|² + 2iπ ⟨w, x⟩) dx
///   = (-iz)^(-1) (-(w1 + i w2)/z)^m exp(-iπ (w·w)/z)`.
///
/// The operator `(2iπ)^(-1)(∂/∂w1 + i ∂/∂w2)` multiplies the base value by
/// `-(w1 + i w2)/z` and annihilates that factor itself, so iterating it
/// produces a pure power with no derivative corrections.
pub fn angular_moment(m: u32, z: Complex64, w: [Complex64; 2]) -> Complex64 {
    let factor = -(w[0] + c64(0.0, 1.0) * w[1]) / z;
    gauss_base(z, w) * factor.powi(m as i32)
}
