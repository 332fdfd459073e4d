//! Sparse bivariate polynomials with complex coefficients.
//!
//! Keys are exponent pairs `(i, j)` for the monomial `x1^i * x2^j`. Everything
//! downstream keeps degrees small (a dozen or so), so the representation
//! favors determinism and obvious correctness over speed: a `BTreeMap` gives
//! a canonical term order, and exact-zero coefficients are dropped on insert.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Complex64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Self::default();
        p.add_term(0, 0, c);
        p
    }

    pub fn monomial(i: u32, j: u32, c: Complex64) -> Self {
        let mut p = Self::default();
        p.add_term(i, j, c);
        p
    }

    /// The coordinate monomial `x1` (axis 0) or `x2` (axis 1).
    pub fn var(axis: usize) -> Self {
        match axis {
            0 => Self::monomial(1, 0, Complex64::new(1.0, 0.0)),
            1 => Self::monomial(0, 1, Complex64::new(1.0, 0.0)),
            _ => panic!("axis out of range"),
        }
    }

    /// `(x1 + i x2)^m`, expanded.
    pub fn angular(m: u32) -> Self {
        let mut p = Self::one();
        let factor = {
            let mut f = Self::var(0);
            f.add_term(0, 1, Complex64::new(0.0, 1.0));
            f
        };
        for _ in 0..m {
            p = p.mul(&factor);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero polynomial reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|&(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn max_exponent(&self, axis: usize) -> u32 {
        self.terms
            .keys()
            .map(|&(i, j)| if axis == 0 { i } else { j })
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, i: u32, j: u32) -> Complex64 {
        self.terms
            .get(&(i, j))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Complex64)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Complex64) {
        let entry = self.terms.entry((i, j)).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.re == 0.0 && entry.im == 0.0 {
            self.terms.remove(&(i, j));
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), &c) in rhs.terms.iter() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s.re == 0.0 && s.im == 0.0 {
            return Self::zero();
        }
        let mut out = Self::default();
        for (&(i, j), &c) in self.terms.iter() {
            out.add_term(i, j, c * s);
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::default();
        for (&(i1, j1), &c1) in self.terms.iter() {
            for (&(i2, j2), &c2) in rhs.terms.iter() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }

    /// Multiplication by the coordinate `x1` (axis 0) or `x2` (axis 1).
    pub fn mul_var(&self, axis: usize) -> Self {
        let mut out = Self::default();
        for (&(i, j), &c) in self.terms.iter() {
            match axis {
                0 => out.add_term(i + 1, j, c),
                1 => out.add_term(i, j + 1, c),
                _ => panic!("axis out of range"),
            }
        }
        out
    }

    /// Partial derivative along `x1` (axis 0) or `x2` (axis 1).
    pub fn derivative(&self, axis: usize) -> Self {
        let mut out = Self::default();
        for (&(i, j), &c) in self.terms.iter() {
            match axis {
                0 if i > 0 => out.add_term(i - 1, j, c * f64::from(i)),
                1 if j > 0 => out.add_term(i, j - 1, c * f64::from(j)),
                _ => {}
            }
        }
        out
    }

    /// Substitute `x -> lambda * x` (the same factor on both coordinates).
    pub fn scale_vars(&self, lambda: Complex64) -> Self {
        let mut out = Self::default();
        for (&(i, j), &c) in self.terms.iter() {
            out.add_term(i, j, c * lambda.powi((i + j) as i32));
        }
        out
    }

    /// Substitute `x -> -x`.
    pub fn reflect(&self) -> Self {
        self.scale_vars(Complex64::new(-1.0, 0.0))
    }

    pub fn eval(&self, x: [Complex64; 2]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(i, j), &c) in self.terms.iter() {
            acc += c * x[0].powi(i as i32) * x[1].powi(j as i32);
        }
        acc
    }

    pub fn eval_real(&self, x: [f64; 2]) -> Complex64 {
        self.eval([Complex64::new(x[0], 0.0), Complex64::new(x[1], 0.0)])
    }

    /// Largest coefficient magnitude, for relative comparisons in tests.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            if i > 0 {
                write!(f, "*x1^{i}")?;
            }
            if j > 0 {
                write!(f, "*x2^{j}")?;
            }
        }
        Ok(())
    }
}
