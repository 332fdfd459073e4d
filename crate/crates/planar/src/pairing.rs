//! Pairings of the arithmetic atoms against dilated, rotated test functions,
//! with the alternative evaluation routes used to cross-check them.
//!
//! The main quantity is
//!
//! ```text
//! ⟨I_{a,c}, q^{1-2iπA♮} P_j(2iπA) h⟩,   P_j(X) = Π_{0<=l<j} (X + l),
//! ```
//!
//! evaluated fully in closed form: `P_j` is applied symbolically, the
//! dilation rescales the atom parameters, and the pairing reduces to Gaussian
//! moments. Two independent routes re-derive the same number:
//!
//! * the B2 route replaces `P_j(2iπA)` by multiplication with
//!   `B2^j = (2π√(2M)(q/a) x2)^j`, available for `a != 0`;
//! * the D2 route evaluates on the Fourier side,
//!   `⟨F I_{a,c}, q^{1+2iπA♮} D2^j F^{-1} h⟩` with `D2 = 2π√(2M)/(cq)·ξ2`,
//!   available for `c != 0`.
//!
//! The three agree for `j <= 1`. For `j >= 2` the replacement routes differ
//! from the main one by a commutator term (see the route-defect test in the
//! integration suite), and the report records that honestly.

use crate::atom::TestFunction;
use crate::dist::{
    i_atom, i_atom_real, pair, sigma_on_test, DistError, ModDist,
};
use crate::poly::Poly2;
use crate::rep::{anat_power, fourier_inv, pj_apply};
use num_complex::Complex64;

const TAU: f64 = std::f64::consts::TAU;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The dilated-and-rotated test function of the main route.
pub fn main_route_test(q: f64, j: u32, h: &TestFunction) -> Result<TestFunction, DistError> {
    Ok(anat_power(q, 1.0, -1, &pj_apply(j, h))?)
}

/// `⟨I_{a,c}, q^{1-2iπA♮} P_j(2iπA) h⟩` for integer coprime indices.
pub fn pairing_iac(
    a: i64,
    c: i64,
    m_index: u32,
    q: f64,
    j: u32,
    h: &TestFunction,
) -> Result<Complex64, DistError> {
    let atom = i_atom(a, c, m_index)?;
    Ok(pair(&atom, &main_route_test(q, j, h)?))
}

/// Same pairing against the unnormalized real-index atom.
pub fn pairing_iac_real(
    a: f64,
    c: f64,
    m_index: u32,
    q: f64,
    j: u32,
    h: &TestFunction,
) -> Result<Complex64, DistError> {
    let atom = i_atom_real(a, c, m_index)?;
    Ok(pair(&atom, &main_route_test(q, j, h)?))
}

#[derive(Clone, Copy, Debug)]
pub struct PairingRoutes {
    pub main: Complex64,
    /// Multiplication route, `a != 0` only.
    pub b2: Option<Complex64>,
    /// Fourier-side route, `c != 0` only.
    pub d2: Option<Complex64>,
}

/// Evaluates the main route and whichever replacement routes are defined.
pub fn pairing_routes(
    a: i64,
    c: i64,
    m_index: u32,
    q: f64,
    j: u32,
    h: &TestFunction,
) -> Result<PairingRoutes, DistError> {
    let atom = i_atom(a, c, m_index)?;
    let main = pair(&atom, &main_route_test(q, j, h)?);

    let b2 = if a != 0 {
        let lambda = TAU * (2.0 * f64::from(m_index)).sqrt() * q / (a as f64);
        let mult = Poly2::monomial(0, j, c64(lambda, 0.0).powu(j));
        let dilated = anat_power(q, 1.0, -1, &h.mul_poly(&mult))?;
        Some(pair(&atom, &dilated))
    } else {
        None
    };

    let d2 = if c != 0 {
        let lambda = TAU * (2.0 * f64::from(m_index)).sqrt() / ((c as f64) * q);
        let mult = Poly2::monomial(0, j, c64(lambda, 0.0).powu(j));
        let fh = fourier_inv(h).mul_poly(&mult);
        let dilated = anat_power(q, 1.0, 1, &fh)?;
        let fatom = crate::dist::fourier_dist(&atom)?;
        Some(pair(&fatom, &dilated))
    } else {
        None
    };

    Ok(PairingRoutes { main, b2, d2 })
}

/// Relative residual of the chirp-averaging identity
///
/// ```text
/// ⟨I°_{a,c}, σ_r q^{1-2iπA♮} h⟩
///   = p^{-r} Σ_{s mod p^r} ⟨I°_{a, c + s·a/p^r}, q^{1-2iπA♮} h⟩,
/// ```
///
/// with the left side computed through the test-function average and the
/// right side through shifted real-index atoms.
pub fn averaging_check(
    a: f64,
    c: f64,
    p: u32,
    r: u32,
    q: f64,
    m_index: u32,
    h: &TestFunction,
) -> Result<f64, DistError> {
    let dilated = anat_power(q, 1.0, -1, h)?;
    let left_atom = i_atom_real(a, c, m_index)?;
    let left = pair(&left_atom, &sigma_on_test(p, r, &dilated));

    let pr = u64::from(p).pow(r);
    let mut right = c64(0.0, 0.0);
    for s in 0..pr {
        let shifted = i_atom_real(a, c + (s as f64) * a / (pr as f64), m_index)?;
        right += pair(&shifted, &dilated);
    }
    right /= pr as f64;

    Ok((left - right).norm() / (1.0 + left.norm().max(right.norm())))
}

/// Shared helper for scans: the atoms of `𝔖`-type sums, one coset at a time.
pub fn iac_dist(a: i64, c: i64, m_index: u32) -> Result<ModDist, DistError> {
    i_atom(a, c, m_index)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    #[test]
    fn base_pairing_value() {
        let got = pairing_iac(1, 0, 1, 1.0, 0, &TestFunction::gaussian()).unwrap();
        assert!((got - (-TAU).exp()).norm() < 1e-15, "got {got}");
    }

    #[test]
    fn all_routes_coincide_at_j_zero_and_one() {
        let mut s = Sampler::new(11);
        for _ in 0..20 {
            let idx = s.coset(7);
            let q = s.scale_q();
            let h = s.test_function();
            for j in [0u32, 1] {
                let r = pairing_routes(idx.a, idx.c, 2, q, j, &h).unwrap();
                let scale = 1.0 + r.main.norm();
                let b2 = r.b2.expect("a != 0");
                let d2 = r.d2.expect("c != 0");
                assert!(
                    (r.main - b2).norm() / scale < 1e-10,
                    "B2 route at j={j}, ({},{}), q={q}: {} vs {b2}",
                    idx.a,
                    idx.c,
                    r.main
                );
                assert!(
                    (r.main - d2).norm() / scale < 1e-10,
                    "D2 route at j={j}, ({},{}), q={q}: {} vs {d2}",
                    idx.a,
                    idx.c,
                    r.main
                );
            }
        }
    }

    #[test]
    fn averaging_residual_vanishes() {
        let h = TestFunction::gaussian();
        assert!(averaging_check(1.0, 1.0, 2, 0, 1.0, 1, &h).unwrap() < 1e-15);
        assert!(averaging_check(1.0, 1.0, 2, 1, 1.0, 1, &h).unwrap() < 1e-12);
        assert!(
            averaging_check(2.0, 1.0, 3, 2, 1.0 / 3.0, 2, &h).unwrap() < 1e-12
        );
    }

    #[test]
    fn main_route_scales_linearly_in_the_atom() {
        // Doubling the distribution coefficient is the same as doubling the
        // pairing; a quick guard against accidental normalization drift.
        let h = TestFunction::gaussian();
        let base = pairing_iac(3, 2, 1, 0.7, 2, &h).unwrap();
        let doubled = pair(
            &i_atom(3, 2, 1).unwrap().scaled(c64(2.0, 0.0)),
            &main_route_test(0.7, 2, &h).unwrap(),
        );
        assert!((doubled - 2.0 * base).norm() < 1e-12 * (1.0 + base.norm()));
    }

    #[test]
    fn pj_charge_shift_is_visible_in_the_pairing() {
        // h with pure angular charge k: P_j(2iπA)h = Π(k+l)·h when the wave
        // vector vanishes, so the pairing collapses to an explicit multiple.
        let h = TestFunction::from_atom(crate::atom::GaussAtom::new(
            c64(1.0, 0.0),
            Poly2::angular(2),
            c64(0.0, 1.0),
            [c64(0.0, 0.0); 2],
        ));
        let j = 3u32;
        let plain = pairing_iac(2, 1, 1, 1.3, 0, &h).unwrap();
        let rotated = pairing_iac(2, 1, 1, 1.3, j, &h).unwrap();
        let factor = (2.0) * (3.0) * (4.0);
        assert!(
            (rotated - factor * plain).norm() < 1e-10 * (1.0 + plain.norm() * factor),
            "expected scalar {factor}: {rotated} vs {plain}"
        );
    }
}
