//! Truncated Poincaré sums over coprime index pairs, evaluated two ways:
//! directly as theta transforms of the arithmetic atoms, and through the
//! weight-(m+1) action on the closed form of `theta(psi_M)`. Fourier
//! coefficients of the truncated series come from periodic sampling on a
//! horizontal line.

use crate::dist::{completion, i_atom, theta_dist, CosetIndex, DistError};
use crate::rep::d_action;
use crate::sums::tree_sum;
use num_complex::Complex64;
use num_integer::Integer;

const TAU: f64 = std::f64::consts::TAU;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// All coprime pairs `(a, c)` with `max(|a|, |c|) <= bound`, in a fixed
/// deterministic order (by max-norm, then `a`, then `c`).
pub fn coprime_pairs(bound: i64) -> Vec<CosetIndex> {
    assert!(bound >= 1);
    let mut out = Vec::new();
    for a in -bound..=bound {
        for c in -bound..=bound {
            if (a, c) != (0, 0) && a.gcd(&c) == 1 {
                out.push(CosetIndex { a, c });
            }
        }
    }
    out.sort_by_key(|idx| (idx.maxnorm(), idx.a, idx.c));
    out
}

/// Truncated sum of `theta_dist(m, I_{a,c}, z)` over coprime pairs.
pub fn poincare_eval(
    m: u32,
    m_index: u32,
    z: Complex64,
    bound: i64,
) -> Result<Complex64, DistError> {
    let mut terms = Vec::new();
    for idx in coprime_pairs(bound) {
        let atom = i_atom(idx.a, idx.c, m_index)?;
        terms.push(theta_dist(m, &atom, z)?);
    }
    Ok(tree_sum(&terms))
}

/// The same sum with every summand produced by the half-plane action on
/// `theta(psi_M)(w) = -i (2M)^{m/2} e^{2iπMw}` through the Bezout-completed
/// matrix of the coset. Used as the cross-route oracle for `poincare_eval`.
pub fn poincare_eval_daction(
    m: u32,
    m_index: u32,
    z: Complex64,
    bound: i64,
) -> Result<Complex64, DistError> {
    let amp = (2.0 * f64::from(m_index)).powf(f64::from(m) / 2.0);
    let f = move |w: Complex64| {
        c64(0.0, -amp) * (c64(0.0, TAU) * f64::from(m_index) * w).exp()
    };
    let mut terms = Vec::new();
    for idx in coprime_pairs(bound) {
        let g = completion(idx.a, idx.c)?;
        terms.push(d_action((m + 1) as i32, &g, &f, z)?);
    }
    Ok(tree_sum(&terms))
}

/// `K` equally spaced samples of the truncated series along `Im z = y`.
pub fn poincare_samples(
    m: u32,
    m_index: u32,
    y: f64,
    bound: i64,
    k: usize,
) -> Result<Vec<Complex64>, DistError> {
    assert!(y > 0.0 && k >= 2);
    // Evaluating atom-by-atom across all sample points reuses the index
    // enumeration once instead of K times.
    let pairs = coprime_pairs(bound);
    let mut per_point: Vec<Vec<Complex64>> = vec![Vec::with_capacity(pairs.len()); k];
    for idx in &pairs {
        let atom = i_atom(idx.a, idx.c, m_index)?;
        for (slot, values) in per_point.iter_mut().enumerate() {
            let z = c64(slot as f64 / k as f64, y);
            values.push(theta_dist(m, &atom, z)?);
        }
    }
    Ok(per_point.iter().map(|v| tree_sum(v)).collect())
}

/// Discrete Fourier coefficient `b_n` from samples on `Im z = y`: the series
/// `Σ b_n e^{2iπ n z}` sampled at `x_k = k/K` gives `b_n e^{-2πny}` plus
/// aliasing, so the estimate is the DFT bin rescaled by `e^{2πny}`.
pub fn fourier_coeff(samples: &[Complex64], n: u32, y: f64) -> Complex64 {
    let k = samples.len();
    let mut acc = c64(0.0, 0.0);
    for (slot, value) in samples.iter().enumerate() {
        let phase = -TAU * f64::from(n) * slot as f64 / k as f64;
        acc += value * c64(phase.cos(), phase.sin());
    }
    acc / k as f64 * (TAU * f64::from(n) * y).exp()
}
