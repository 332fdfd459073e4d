//! Schwartz-class test functions built from Gaussian atoms.
//!
//! A single atom is
//!
//! ```text
//! coeff * poly(x) * exp(iπ zpar |x|² + 2iπ ⟨wave, x⟩),    Im zpar > 0,
//! ```
//!
//! and a test function is a finite sum of atoms. The class is closed under
//! every operation used here: chirp multiplication shifts `zpar`, dilation
//! rescales the parameters, the Fourier transform maps atoms to atoms, and
//! the infinitesimal generators act through polynomial multipliers.

use crate::gauss::integrate_poly;
use crate::poly::Poly2;
use num_complex::Complex64;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Clone, Debug)]
pub struct GaussAtom {
    pub coeff: Complex64,
    pub poly: Poly2,
    pub zpar: Complex64,
    pub wave: [Complex64; 2],
}

impl GaussAtom {
    pub fn new(coeff: Complex64, poly: Poly2, zpar: Complex64, wave: [Complex64; 2]) -> Self {
        assert!(zpar.im > 0.0, "atom needs Im zpar > 0, got {zpar}");
        GaussAtom {
            coeff,
            poly,
            zpar,
            wave,
        }
    }

    /// The standard Gaussian `exp(-π |x|²)`, i.e. `zpar = i`.
    pub fn gaussian() -> Self {
        Self::new(c64(1.0, 0.0), Poly2::one(), c64(0.0, 1.0), [c64(0.0, 0.0); 2])
    }

    pub fn eval(&self, x: [f64; 2]) -> Complex64 {
        let xs = x[0] * x[0] + x[1] * x[1];
        let phase = c64(0.0, PI) * self.zpar * xs
            + c64(0.0, TAU) * (self.wave[0] * x[0] + self.wave[1] * x[1]);
        self.coeff * self.poly.eval_real(x) * phase.exp()
    }

    /// `∫ atom(x) dx` in closed form.
    pub fn integral(&self) -> Complex64 {
        self.coeff * integrate_poly(&self.poly, self.zpar, self.wave)
    }

    pub fn scaled(mut self, s: Complex64) -> Self {
        self.coeff *= s;
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct TestFunction {
    atoms: Vec<GaussAtom>,
}

impl TestFunction {
    pub fn new(atoms: Vec<GaussAtom>) -> Self {
        TestFunction { atoms }
    }

    pub fn from_atom(atom: GaussAtom) -> Self {
        TestFunction { atoms: vec![atom] }
    }

    pub fn gaussian() -> Self {
        Self::from_atom(GaussAtom::gaussian())
    }

    pub fn atoms(&self) -> &[GaussAtom] {
        &self.atoms
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn eval(&self, x: [f64; 2]) -> Complex64 {
        self.atoms.iter().map(|a| a.eval(x)).sum()
    }

    pub fn integral(&self) -> Complex64 {
        self.atoms.iter().map(|a| a.integral()).sum()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        TestFunction {
            atoms: self.atoms.iter().map(|a| a.clone().scaled(s)).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut atoms = self.atoms.clone();
        atoms.extend(rhs.atoms.iter().cloned());
        TestFunction { atoms }
    }

    /// Apply a closure atom-wise; the image of an atom may be any atom.
    pub fn map_atoms(&self, f: impl Fn(&GaussAtom) -> GaussAtom) -> Self {
        TestFunction {
            atoms: self.atoms.iter().map(f).collect(),
        }
    }

    /// Multiply every atom's polynomial part by `p`.
    pub fn mul_poly(&self, p: &Poly2) -> Self {
        self.map_atoms(|a| GaussAtom {
            coeff: a.coeff,
            poly: a.poly.mul(p),
            zpar: a.zpar,
            wave: a.wave,
        })
    }

    /// Bilinear integral `∫ f(x) g(x) dx`, in closed form.
    ///
    /// This is the pairing used for transpose checks; there is no complex
    /// conjugation anywhere in this crate's pairings.
    pub fn inner_with(&self, rhs: &Self) -> Complex64 {
        let mut acc = c64(0.0, 0.0);
        for a in &self.atoms {
            for b in &rhs.atoms {
                let poly = a.poly.mul(&b.poly);
                let z = a.zpar + b.zpar;
                let w = [a.wave[0] + b.wave[0], a.wave[1] + b.wave[1]];
                acc += a.coeff * b.coeff * integrate_poly(&poly, z, w);
            }
        }
        acc
    }

    /// Coarse bound on how far from the origin the function still matters;
    /// used by the quadrature oracle to pick a truncation radius.
    pub fn spread(&self) -> f64 {
        let mut min_im: f64 = f64::INFINITY;
        let mut max_wave: f64 = 0.0;
        for a in &self.atoms {
            min_im = min_im.min(a.zpar.im);
            max_wave = max_wave
                .max(a.wave[0].im.abs())
                .max(a.wave[1].im.abs());
        }
        if !min_im.is_finite() {
            return 1.0;
        }
        // Complex wave components shift the effective Gaussian center by
        // |Im w| / Im zpar; pad past that.
        (40.0 / (PI * min_im)).sqrt() + 2.0 * max_wave / min_im + 1.0
    }
}
