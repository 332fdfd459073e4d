//! Brute-force tensor quadrature, used as an independent oracle in tests.
//!
//! Midpoint rule on a square `[-R, R]²`. The integrands here are smooth and
//! Gaussian-damped, so the midpoint rule converges fast once `R` covers the
//! effective support; the error estimate compares two resolutions.

use num_complex::Complex64;

pub struct QuadEstimate {
    pub value: Complex64,
    pub err: f64,
}

/// Midpoint rule with `n x n` cells on `[-radius, radius]²`.
pub fn integrate2d(
    f: &dyn Fn([f64; 2]) -> Complex64,
    radius: f64,
    n: usize,
) -> Complex64 {
    let h = 2.0 * radius / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        let x = -radius + (i as f64 + 0.5) * h;
        for j in 0..n {
            let y = -radius + (j as f64 + 0.5) * h;
            acc += f([x, y]);
        }
    }
    acc * (h * h)
}

/// Two-resolution estimate: value at the finer grid, difference as the error.
pub fn oracle(f: &dyn Fn([f64; 2]) -> Complex64, radius: f64, n: usize) -> QuadEstimate {
    let coarse = integrate2d(f, radius, n);
    let fine = integrate2d(f, radius, n + n / 2);
    QuadEstimate {
        value: fine,
        err: (fine - coarse).norm(),
    }
}
