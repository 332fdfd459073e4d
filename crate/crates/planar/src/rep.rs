//! The planar representation, its infinitesimal generators, the theta
//! transform, and the weight-(m+1) action on the upper half-plane.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * `Ana((1 0; c 1)) h = exp(iπ c |x|²) h(x)` (lower unipotent = chirp);
//! * `Ana(diag(a, 1/a)) h = a^(-1) h(x/a)`;
//! * `Ana((0 1; -1 0)) h = -i (F h)`, with `(F h)(ξ) = ∫ h(x) e^(-2iπ⟨x,ξ⟩) dx`;
//! * `theta(m, h)(z) = ∫ (x1 + i x2)^m exp(iπ z |x|²) h(x) dx`, `Im z > 0`;
//! * `d_action((a b; c d)) f(z) = (bz + d)^(-m-1) f((az + c)/(bz + d))`,
//!   the transposed Moebius convention, implemented verbatim.
//!
//! The square of the inversion sends `h` to `-h(-x)`, so the representation
//! is genuine (not projective) in this two-variable realization.
//!
//! A general element factors through the generators: for `b != 0`,
//!
//! ```text
//! (a b; c d) = N(d/b) A(b) W N(a/b),   N(u) = (1 0; u 1),  W = (0 1; -1 0),
//! ```
//!
//! which one checks by multiplying out (the bottom-left entry collapses via
//! `ad - bc = 1`), and for `b = 0` simply `(a 0; c 1/a) = A(a) N(ca)`.
//! `decompose` returns the factors in application order (first factor acts
//! first), so folding them over a test function realizes `Ana(g)`.

use crate::atom::{GaussAtom, TestFunction};
use crate::gauss::integrate_poly;
use crate::poly::Poly2;
use num_complex::Complex64;
use thiserror::Error;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Error)]
pub enum RepError {
    #[error("matrix is not unimodular: det = {det}")]
    NotUnimodular { det: f64 },
    #[error("dilation parameter must be nonzero")]
    DegenerateDilation,
    #[error("dilation base must be positive, got {0}")]
    NonpositiveBase(f64),
    #[error("evaluation point must satisfy Im z > 0")]
    HalfPlane,
    #[error("Moebius denominator vanished")]
    Pole,
}

/// A real 2x2 matrix of determinant 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, RepError> {
        let det = a * d - b * c;
        let scale = (a * a + b * b + c * c + d * d).max(1.0);
        if (det - 1.0).abs() > 1e-8 * scale {
            return Err(RepError::NotUnimodular { det });
        }
        Ok(GroupElement { a, b, c, d })
    }

    pub fn identity() -> Self {
        GroupElement {
            a: 1.0,
            b: 0.0,
            c: 0.0,
            d: 1.0,
        }
    }

    /// Lower unipotent `(1 0; c 1)`.
    pub fn lower(c: f64) -> Self {
        GroupElement {
            a: 1.0,
            b: 0.0,
            c,
            d: 1.0,
        }
    }

    /// `diag(a, 1/a)`, `a != 0`.
    pub fn diag(a: f64) -> Self {
        assert!(a != 0.0);
        GroupElement {
            a,
            b: 0.0,
            c: 0.0,
            d: 1.0 / a,
        }
    }

    /// `(0 1; -1 0)`.
    pub fn inversion() -> Self {
        GroupElement {
            a: 0.0,
            b: 1.0,
            c: -1.0,
            d: 0.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Self {
        GroupElement {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    pub fn neg(&self) -> Self {
        GroupElement {
            a: -self.a,
            b: -self.b,
            c: -self.c,
            d: -self.d,
        }
    }
}

/// One generator of the representation, in the order it acts on functions.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Generator {
    /// Multiplication by `exp(iπ c |x|²)`.
    Chirp(f64),
    /// `h(x) -> a^(-1) h(x/a)`.
    Dilate(f64),
    /// `-i` times the Fourier transform.
    Inversion,
}

impl Generator {
    /// The matrix the generator represents, for reconstruction checks.
    pub fn matrix(&self) -> GroupElement {
        match *self {
            Generator::Chirp(c) => GroupElement::lower(c),
            Generator::Dilate(a) => GroupElement::diag(a),
            Generator::Inversion => GroupElement::inversion(),
        }
    }
}

/// Factor `g` into generators, first-applied first.
pub fn decompose(g: &GroupElement) -> Result<Vec<Generator>, RepError> {
    let mut word = Vec::new();
    if g.b == 0.0 {
        if g.a == 0.0 {
            return Err(RepError::DegenerateDilation);
        }
        let chirp = g.c * g.a;
        if chirp != 0.0 {
            word.push(Generator::Chirp(chirp));
        }
        if g.a != 1.0 {
            word.push(Generator::Dilate(g.a));
        }
    } else {
        if g.a != 0.0 {
            word.push(Generator::Chirp(g.a / g.b));
        }
        word.push(Generator::Inversion);
        word.push(Generator::Dilate(g.b));
        if g.d != 0.0 {
            word.push(Generator::Chirp(g.d / g.b));
        }
    }
    Ok(word)
}

/// Plain Fourier transform of one atom, staying in the atom class.
///
/// The base exponential transforms by completing the square,
///
/// ```text
/// F[e^(iπζ|x|² + 2iπ⟨w,x⟩)](ξ) = (-iζ)^(-1) e^(-iπ(w·w)/ζ)
///                                 · e^(iπ(-1/ζ)|ξ|² + 2iπ⟨w/ζ, ξ⟩),
/// ```
///
/// and each polynomial factor `x_axis` becomes `(-2iπ)^(-1) ∂/∂ξ_axis` acting
/// on the transformed atom, which keeps the polynomial part polynomial.
fn fourier_atom(atom: &GaussAtom) -> GaussAtom {
    let zeta = atom.zpar;
    let new_z = -zeta.finv();
    let new_w = [atom.wave[0] / zeta, atom.wave[1] / zeta];
    let wsq = atom.wave[0] * atom.wave[0] + atom.wave[1] * atom.wave[1];
    let base = (c64(0.0, -1.0) * zeta).finv() * (c64(0.0, -PI) * wsq / zeta).exp();

    // op_axis(P) = (-2iπ)^(-1) ∂_axis P - (ζ' ξ_axis + w'_axis) P
    let inv = c64(0.0, -TAU).finv();
    let op = |p: &Poly2, axis: usize| -> Poly2 {
        let lead = p.derivative(axis).scale(inv);
        let drag = p
            .mul_var(axis)
            .scale(new_z)
            .add(&p.scale(new_w[axis]));
        lead.sub(&drag)
    };

    let imax = atom.poly.max_exponent(0) as usize;
    let jmax = atom.poly.max_exponent(1) as usize;
    // table[i][j] = op1^i op2^j applied to the constant 1
    let mut table = vec![vec![Poly2::zero(); jmax + 1]; imax + 1];
    table[0][0] = Poly2::one();
    for j in 1..=jmax {
        table[0][j] = op(&table[0][j - 1], 1);
    }
    for i in 1..=imax {
        for (j, cell) in table[i - 1].clone().iter().enumerate() {
            table[i][j] = op(cell, 0);
        }
    }

    let mut poly = Poly2::zero();
    for (&(i, j), &coef) in atom.poly.terms() {
        poly = poly.add(&table[i as usize][j as usize].scale(coef));
    }
    GaussAtom::new(atom.coeff * base, poly, new_z, new_w)
}

/// Plain Fourier transform, atom by atom.
pub fn fourier(h: &TestFunction) -> TestFunction {
    h.map_atoms(fourier_atom)
}

/// `h(x) -> h(-x)`.
pub fn reflect(h: &TestFunction) -> TestFunction {
    h.map_atoms(|a| GaussAtom {
        coeff: a.coeff,
        poly: a.poly.reflect(),
        zpar: a.zpar,
        wave: [-a.wave[0], -a.wave[1]],
    })
}

/// Inverse Fourier transform: `F^(-1) h = (F h)(-·)`.
pub fn fourier_inv(h: &TestFunction) -> TestFunction {
    reflect(&fourier(h))
}

fn apply_generator(gen: Generator, h: &TestFunction) -> TestFunction {
    match gen {
        Generator::Chirp(c) => h.map_atoms(|a| GaussAtom {
            coeff: a.coeff,
            poly: a.poly.clone(),
            zpar: a.zpar + c64(c, 0.0),
            wave: a.wave,
        }),
        Generator::Dilate(s) => h.map_atoms(|a| {
            let inv = c64(1.0 / s, 0.0);
            GaussAtom {
                coeff: a.coeff * inv,
                poly: a.poly.scale_vars(inv),
                zpar: a.zpar / (s * s),
                wave: [a.wave[0] * inv, a.wave[1] * inv],
            }
        }),
        Generator::Inversion => fourier(h).scaled(c64(0.0, -1.0)),
    }
}

/// `Ana(g) h`, through the generator factorization.
pub fn ana_apply(g: &GroupElement, h: &TestFunction) -> Result<TestFunction, RepError> {
    let mut out = h.clone();
    for gen in decompose(g)? {
        out = apply_generator(gen, &out);
    }
    Ok(out)
}

/// `theta(m, h)(z) = ∫ (x1 + i x2)^m exp(iπ z |x|²) h(x) dx`, `Im z > 0`.
pub fn theta(m: u32, h: &TestFunction, z: Complex64) -> Result<Complex64, RepError> {
    if z.im <= 0.0 {
        return Err(RepError::HalfPlane);
    }
    let angular = Poly2::angular(m);
    let mut acc = c64(0.0, 0.0);
    for a in h.atoms() {
        let poly = a.poly.mul(&angular);
        acc += a.coeff * integrate_poly(&poly, z + a.zpar, a.wave);
    }
    Ok(acc)
}

/// `(bz + d)^(-mplus1) F((az + c)/(bz + d))` for `g = (a b; c d)`.
pub fn d_action(
    mplus1: i32,
    g: &GroupElement,
    f: &dyn Fn(Complex64) -> Complex64,
    z: Complex64,
) -> Result<Complex64, RepError> {
    let denom = g.b * z + g.d;
    if denom.norm() == 0.0 {
        return Err(RepError::Pole);
    }
    let w = (g.a * z + g.c) / denom;
    Ok(denom.powi(-mplus1) * f(w))
}

/// `2iπA = -i (x1 ∂2 - x2 ∂1)`, the rotation generator.
///
/// On an atom the radial chirp drops out and only the polynomial and the
/// plane wave contribute:
/// `poly -> -i (x1 ∂2 - x2 ∂1) poly + 2π (w2 x1 - w1 x2) poly`.
/// On `(x1 + i x2)^k` this operator acts as the scalar `+k`; that sign is
/// pinned by a test and relied on downstream.
pub fn infinitesimal_a(h: &TestFunction) -> TestFunction {
    h.map_atoms(|a| {
        let rot = a
            .poly
            .derivative(1)
            .mul_var(0)
            .sub(&a.poly.derivative(0).mul_var(1))
            .scale(c64(0.0, -1.0));
        let wave_term = a
            .poly
            .mul_var(0)
            .scale(a.wave[1] * TAU)
            .sub(&a.poly.mul_var(1).scale(a.wave[0] * TAU));
        GaussAtom {
            coeff: a.coeff,
            poly: rot.add(&wave_term),
            zpar: a.zpar,
            wave: a.wave,
        }
    })
}

/// `2iπA♮ = 1 + x1 ∂1 + x2 ∂2`, the dilation generator.
pub fn infinitesimal_anat(h: &TestFunction) -> TestFunction {
    h.map_atoms(|a| {
        let grad = a
            .poly
            .derivative(0)
            .mul_var(0)
            .add(&a.poly.derivative(1).mul_var(1));
        let radial = {
            let mut r2 = Poly2::monomial(2, 0, c64(1.0, 0.0));
            r2.add_term(0, 2, c64(1.0, 0.0));
            a.poly.mul(&r2).scale(c64(0.0, TAU) * a.zpar)
        };
        let wave_term = a
            .poly
            .mul_var(0)
            .scale(c64(0.0, TAU) * a.wave[0])
            .add(&a.poly.mul_var(1).scale(c64(0.0, TAU) * a.wave[1]));
        GaussAtom {
            coeff: a.coeff,
            poly: a.poly.add(&grad).add(&radial).add(&wave_term),
            zpar: a.zpar,
            wave: a.wave,
        }
    })
}

/// `P_j(2iπA) h` with `P_j(X) = Π_{0 <= l < j} (X + l)`.
pub fn pj_apply(j: u32, h: &TestFunction) -> TestFunction {
    let mut out = h.clone();
    for l in 0..j {
        let rotated = infinitesimal_a(&out);
        out = rotated.add(&out.scaled(c64(f64::from(l), 0.0)));
    }
    out
}

/// `q^(s + sigma·2iπA♮) h = q^(s + sigma) h(q^sigma x)`, `q > 0`, `sigma = ±1`.
pub fn anat_power(
    q: f64,
    s: f64,
    sigma: i32,
    h: &TestFunction,
) -> Result<TestFunction, RepError> {
    if q <= 0.0 {
        return Err(RepError::NonpositiveBase(q));
    }
    assert!(sigma == 1 || sigma == -1, "sigma must be +1 or -1");
    let sg = f64::from(sigma);
    let qs = c64(q.powf(sg), 0.0);
    let coeff_scale = c64(q.powf(s + sg), 0.0);
    Ok(h.map_atoms(|a| GaussAtom {
        coeff: a.coeff * coeff_scale,
        poly: a.poly.scale_vars(qs),
        zpar: a.zpar * q.powf(2.0 * sg),
        wave: [a.wave[0] * qs, a.wave[1] * qs],
    }))
}

/// Relative intertwining residual
/// `|theta(m, Ana(g) h, z) - d_action(m+1, g, theta(m, h, ·), z)| / (1 + |theta(m, h, z)|)`.
pub fn intertwine_residual(
    m: u32,
    g: &GroupElement,
    h: &TestFunction,
    z: Complex64,
) -> Result<f64, RepError> {
    let lhs = theta(m, &ana_apply(g, h)?, z)?;
    let theta_h = |w: Complex64| theta(m, h, w).expect("Moebius image stays in the half-plane");
    let rhs = d_action((m + 1) as i32, g, &theta_h, z)?;
    let scale = 1.0 + theta(m, h, z)?.norm();
    Ok((lhs - rhs).norm() / scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_atom() -> TestFunction {
        TestFunction::from_atom(GaussAtom::new(
            c64(0.8, 0.3),
            Poly2::angular(2).add(&Poly2::var(0)),
            c64(0.3, 1.1),
            [c64(0.4, 0.1), c64(-0.6, 0.0)],
        ))
    }

    #[test]
    fn decompose_reconstructs_the_matrix() {
        let cases = [
            GroupElement::new(2.0, 3.0, 1.0, 2.0).unwrap(),
            GroupElement::new(1.0, 0.0, 5.0, 1.0).unwrap(),
            GroupElement::new(-2.0, 0.0, 3.0, -0.5).unwrap(),
            GroupElement::inversion(),
            GroupElement::new(0.0, 2.0, -0.5, 3.0).unwrap(),
        ];
        for g in cases {
            let word = decompose(&g).unwrap();
            let mut m = GroupElement::identity();
            // Last-applied factor is leftmost in the product.
            for gen in word.iter().rev() {
                m = m.mul(&gen.matrix());
            }
            assert!(
                (m.a - g.a).abs() + (m.b - g.b).abs() + (m.c - g.c).abs() + (m.d - g.d).abs()
                    < 1e-12,
                "reconstruction failed for {g:?}: got {m:?}"
            );
        }
    }

    #[test]
    fn fourier_fixed_point_and_involution() {
        let g = TestFunction::gaussian();
        let fg = fourier(&g);
        assert_eq!(fg.atoms().len(), 1);
        let a = &fg.atoms()[0];
        assert!((a.coeff - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((a.zpar - c64(0.0, 1.0)).norm() < 1e-14);

        // F(F h) = h(-x) on a generic atom, compared pointwise.
        let h = sample_atom();
        let ffh = fourier(&fourier(&h));
        let refl = reflect(&h);
        for x in [[0.3, -0.2], [1.1, 0.7], [-0.4, 0.9]] {
            let diff = (ffh.eval(x) - refl.eval(x)).norm();
            assert!(diff < 1e-10, "x = {x:?}: diff = {diff}");
        }
    }

    #[test]
    fn fourier_of_first_angular_monomial() {
        // (x1 + i x2) e^{-π|x|²} maps to -i (ξ1 + i ξ2) e^{-π|ξ|²}.
        let h = TestFunction::from_atom(GaussAtom::new(
            c64(1.0, 0.0),
            Poly2::angular(1),
            c64(0.0, 1.0),
            [c64(0.0, 0.0); 2],
        ));
        let fh = fourier(&h);
        for x in [[0.5, 0.1], [-0.3, 0.8]] {
            let expect = c64(0.0, -1.0) * h.eval(x);
            let diff = (fh.eval(x) - expect).norm();
            assert!(diff < 1e-12, "diff = {diff}");
        }
    }

    #[test]
    fn dilation_example() {
        // diag(a, 1/a) sends e^{-π|x|²} to a^{-1} e^{-π|x|²/a²}.
        let g = GroupElement::diag(2.0);
        let out = ana_apply(&g, &TestFunction::gaussian()).unwrap();
        let a = &out.atoms()[0];
        assert!((a.coeff - c64(0.5, 0.0)).norm() < 1e-14);
        assert!((a.zpar - c64(0.0, 0.25)).norm() < 1e-14);
    }

    #[test]
    fn rotation_generator_eigenvalue_is_plus_k() {
        for k in [1u32, 2, 5] {
            let h = TestFunction::from_atom(GaussAtom::new(
                c64(1.0, 0.0),
                Poly2::angular(k),
                c64(0.0, 1.0),
                [c64(0.0, 0.0); 2],
            ));
            let ah = infinitesimal_a(&h);
            for x in [[0.7, 0.2], [-0.4, 1.0]] {
                let diff = (ah.eval(x) - f64::from(k) * h.eval(x)).norm();
                assert!(diff < 1e-12, "k = {k}: diff = {diff}");
            }
        }
    }

    #[test]
    fn radial_atoms_are_killed_by_rotation() {
        let mut r2 = Poly2::monomial(2, 0, c64(3.0, 0.0));
        r2.add_term(0, 2, c64(3.0, 0.0));
        let h = TestFunction::from_atom(GaussAtom::new(
            c64(1.0, 0.0),
            r2,
            c64(0.2, 0.9),
            [c64(0.0, 0.0); 2],
        ));
        let ah = infinitesimal_a(&h);
        assert!(ah.atoms().iter().all(|a| a.poly.is_zero()));
    }

    #[test]
    fn dilation_generator_on_gaussian() {
        let h = TestFunction::gaussian();
        let out = infinitesimal_anat(&h);
        let a = &out.atoms()[0];
        // 1 - 2π|x|²
        assert!((a.poly.coeff(0, 0) - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((a.poly.coeff(2, 0) - c64(-TAU, 0.0)).norm() < 1e-14);
        assert!((a.poly.coeff(0, 2) - c64(-TAU, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn anat_power_examples() {
        let h = TestFunction::gaussian();
        let same = anat_power(1.0, 1.0, -1, &h).unwrap();
        assert!((same.atoms()[0].coeff - c64(1.0, 0.0)).norm() < 1e-14);

        // q^{1-2iπA♮} h = h(x/q): zpar scales by q^{-2}, coeff stays 1.
        let out = anat_power(2.0, 1.0, -1, &h).unwrap();
        let a = &out.atoms()[0];
        assert!((a.coeff - c64(1.0, 0.0)).norm() < 1e-14);
        assert!((a.zpar - c64(0.0, 0.25)).norm() < 1e-14);

        // R at p = 2: (1/2) h(x/√2).
        let r = anat_power(2.0_f64.sqrt(), -1.0, -1, &h).unwrap();
        let a = &r.atoms()[0];
        assert!((a.coeff - c64(0.5, 0.0)).norm() < 1e-14);
        assert!((a.zpar - c64(0.0, 0.5)).norm() < 1e-14);
    }

    #[test]
    fn theta_kills_radial_atoms() {
        let v = theta(3, &TestFunction::gaussian(), c64(0.3, 1.0)).unwrap();
        assert!(v.norm() < 1e-14);
    }

    #[test]
    fn theta_radial_reduction_oracle() {
        // h = (x1 - i x2)^m e^{-π|x|²}: theta_m h(z) = m! π^{-m} (-i(z+i))^{-m-1}.
        let z = c64(0.4, 0.9);
        for m in [1u32, 2, 4] {
            let mut anti = Poly2::one();
            let factor = {
                let mut f = Poly2::var(0);
                f.add_term(0, 1, c64(0.0, -1.0));
                f
            };
            for _ in 0..m {
                anti = anti.mul(&factor);
            }
            let h = TestFunction::from_atom(GaussAtom::new(
                c64(1.0, 0.0),
                anti,
                c64(0.0, 1.0),
                [c64(0.0, 0.0); 2],
            ));
            let got = theta(m, &h, z).unwrap();
            let mut fact = 1.0;
            for k in 2..=m {
                fact *= f64::from(k);
            }
            let expect =
                fact * PI.powi(-(m as i32)) * (c64(0.0, -1.0) * (z + c64(0.0, 1.0))).powi(-(m as i32) - 1);
            let diff = (got - expect).norm() / expect.norm();
            assert!(diff < 1e-12, "m = {m}: rel diff = {diff}");
        }
    }

    #[test]
    fn chirp_intertwines_exactly() {
        let g = GroupElement::lower(0.7);
        let r = intertwine_residual(11, &g, &sample_atom(), c64(0.2, 1.3)).unwrap();
        assert!(r < 1e-10, "residual = {r}");
    }

    #[test]
    fn inversion_squared_is_parity() {
        // Ana(W)² h = -h(-x).
        let h = sample_atom();
        let w = GroupElement::inversion();
        let out = ana_apply(&w, &ana_apply(&w, &h).unwrap()).unwrap();
        let expect = reflect(&h).scaled(c64(-1.0, 0.0));
        for x in [[0.6, -0.1], [-0.9, 0.4]] {
            let diff = (out.eval(x) - expect.eval(x)).norm();
            assert!(diff < 1e-10, "diff = {diff}");
        }
    }
}
