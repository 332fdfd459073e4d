//! Tempered distributions of Dirac and chirp-plane-wave type, the arithmetic
//! atoms built from them, and closed-form transport under the group action.
//!
//! Everything here pairs against `TestFunction` in closed form. A Dirac pairs
//! by point evaluation; a chirp wave `coeff · e^{iπβ|x|² + 2iπ⟨w,x⟩}` pairs by
//! absorbing its phase into the Gaussian parameters of the test atom, which
//! keeps the integral absolutely convergent because `β` is real while the
//! test atom has `Im(zpar) > 0`.
//!
//! `inv_level` is bookkeeping for the chirp-averaging operators: a value
//! `Some(j)` records that the distribution is invariant under multiplication
//! by `e^{iπ p^j |x|²}` (the operation's prime is supplied per call; `j = 0`
//! means invariance under all integer chirps, which is prime-independent).
//! For Dirac atoms this is the checkable statement `p^j |point|² ∈ 2ℤ`.
//! Transforms that do not interact cleanly with that invariance return
//! `None` rather than guessing.

use crate::atom::{GaussAtom, TestFunction};
use crate::gauss::{angular_moment, integrate_poly};
use crate::rep::{decompose, Generator, GroupElement, RepError};
use num_complex::Complex64;
use num_integer::Integer;
use thiserror::Error;

const PI: f64 = std::f64::consts::PI;
const TAU: f64 = std::f64::consts::TAU;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Error)]
pub enum DistError {
    #[error("index must satisfy gcd(a, c) = 1, got ({a}, {c})")]
    NotCoprime { a: i64, c: i64 },
    #[error("index (0, 0) is not allowed")]
    ZeroIndex,
    #[error("parameter must be at least 1")]
    EmptyParameter,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("operator needs invariance level at most {needed}, distribution carries {got:?}")]
    Level { needed: i64, got: Option<i64> },
    #[error("evaluation point must satisfy Im z > 0")]
    HalfPlane,
    #[error("unsupported transform: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

/// One distribution atom: a weighted Dirac mass or a chirped plane wave.
#[derive(Clone, Debug)]
pub enum DistAtom {
    Dirac {
        coeff: Complex64,
        point: [f64; 2],
    },
    ChirpWave {
        coeff: Complex64,
        beta: f64,
        wave: [Complex64; 2],
        note: Option<String>,
    },
}

impl DistAtom {
    pub fn dirac(coeff: Complex64, point: [f64; 2]) -> Self {
        DistAtom::Dirac { coeff, point }
    }

    pub fn chirp_wave(coeff: Complex64, beta: f64, wave: [Complex64; 2]) -> Self {
        DistAtom::ChirpWave {
            coeff,
            beta,
            wave,
            note: None,
        }
    }

    pub fn coeff(&self) -> Complex64 {
        match self {
            DistAtom::Dirac { coeff, .. } => *coeff,
            DistAtom::ChirpWave { coeff, .. } => *coeff,
        }
    }

    fn scaled(&self, s: Complex64) -> Self {
        match self {
            DistAtom::Dirac { coeff, point } => DistAtom::Dirac {
                coeff: coeff * s,
                point: *point,
            },
            DistAtom::ChirpWave {
                coeff,
                beta,
                wave,
                note,
            } => DistAtom::ChirpWave {
                coeff: coeff * s,
                beta: *beta,
                wave: *wave,
                note: note.clone(),
            },
        }
    }
}

/// A finite sum of distribution atoms with an optional invariance tag.
#[derive(Clone, Debug, Default)]
pub struct ModDist {
    pub atoms: Vec<DistAtom>,
    pub inv_level: Option<i64>,
}

impl ModDist {
    pub fn new(atoms: Vec<DistAtom>, inv_level: Option<i64>) -> Self {
        ModDist { atoms, inv_level }
    }

    pub fn from_atom(atom: DistAtom, inv_level: Option<i64>) -> Self {
        ModDist {
            atoms: vec![atom],
            inv_level,
        }
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        ModDist {
            atoms: self.atoms.iter().map(|a| a.scaled(s)).collect(),
            inv_level: self.inv_level,
        }
    }

    /// Sum of distributions. The combined tag is the weaker invariance
    /// (larger exponent); an unknown side makes the sum unknown.
    pub fn add(&self, other: &Self) -> Self {
        let inv_level = match (self.inv_level, other.inv_level) {
            (Some(a), Some(b)) => Some(a.max(b)),
            _ => None,
        };
        let mut atoms = self.atoms.clone();
        atoms.extend(other.atoms.iter().cloned());
        ModDist { atoms, inv_level }
    }

    /// Checks the testable part of the invariance tag: each Dirac atom that
    /// carries mass must satisfy `p^j |point|² ∈ 2ℤ` up to floating-point
    /// slack. Atoms annihilated by a chirp average are exempt.
    pub fn level_consistent(&self, p: u32) -> bool {
        let Some(j) = self.inv_level else {
            return true;
        };
        let mass: f64 = self.atoms.iter().map(|a| a.coeff().norm()).sum();
        let pj = f64::from(p).powi(j as i32);
        self.atoms.iter().all(|a| match a {
            DistAtom::Dirac { coeff, point } => {
                if coeff.norm() <= 1e-12 * (1.0 + mass) {
                    return true;
                }
                let v = pj * (point[0] * point[0] + point[1] * point[1]) / 2.0;
                (v - v.round()).abs() < 1e-9 * (1.0 + v.abs())
            }
            DistAtom::ChirpWave { .. } => true,
        })
    }
}

/// `⟨D, h⟩`, bilinear (no conjugation anywhere in this pairing).
pub fn pair(d: &ModDist, h: &TestFunction) -> Complex64 {
    let mut acc = c64(0.0, 0.0);
    for atom in &d.atoms {
        match atom {
            DistAtom::Dirac { coeff, point } => {
                acc += coeff * h.eval(*point);
            }
            DistAtom::ChirpWave {
                coeff, beta, wave, ..
            } => {
                for t in h.atoms() {
                    let z = t.zpar + c64(*beta, 0.0);
                    let w = [t.wave[0] + wave[0], t.wave[1] + wave[1]];
                    acc += coeff * t.coeff * integrate_poly(&t.poly, z, w);
                }
            }
        }
    }
    acc
}

/// `theta_dist(m, D, z) = ⟨D, (x1 + i x2)^m e^{iπz|x|²}⟩`, `Im z > 0`.
pub fn theta_dist(m: u32, d: &ModDist, z: Complex64) -> Result<Complex64, DistError> {
    if z.im <= 0.0 {
        return Err(DistError::HalfPlane);
    }
    let mut acc = c64(0.0, 0.0);
    for atom in &d.atoms {
        match atom {
            DistAtom::Dirac { coeff, point } => {
                let angular = c64(point[0], point[1]).powu(m);
                let phase =
                    (c64(0.0, PI) * z * (point[0] * point[0] + point[1] * point[1])).exp();
                acc += coeff * angular * phase;
            }
            DistAtom::ChirpWave {
                coeff, beta, wave, ..
            } => {
                acc += coeff * angular_moment(m, z + c64(*beta, 0.0), *wave);
            }
        }
    }
    Ok(acc)
}

/// `ψ_M = -i δ` at `(√(2M), 0)`, invariant under all integer chirps.
pub fn psi(m_index: u32) -> Result<ModDist, DistError> {
    if m_index == 0 {
        return Err(DistError::EmptyParameter);
    }
    let s = (2.0 * f64::from(m_index)).sqrt();
    Ok(ModDist::from_atom(
        DistAtom::dirac(c64(0.0, -1.0), [s, 0.0]),
        Some(0),
    ))
}

/// `φ_M = e^{2iπ x1 √(2M)}`, the plane wave whose Fourier transform times
/// `-i` is `ψ_M`.
pub fn phi(m_index: u32) -> Result<ModDist, DistError> {
    if m_index == 0 {
        return Err(DistError::EmptyParameter);
    }
    let s = (2.0 * f64::from(m_index)).sqrt();
    Ok(ModDist::from_atom(
        DistAtom::chirp_wave(c64(1.0, 0.0), 0.0, [c64(s, 0.0), c64(0.0, 0.0)]),
        None,
    ))
}

/// Multiplication by `e^{iπ c |x|²}`.
pub fn chirp_dist(c: f64, d: &ModDist) -> ModDist {
    let atoms = d
        .atoms
        .iter()
        .map(|atom| match atom {
            DistAtom::Dirac { coeff, point } => DistAtom::Dirac {
                coeff: coeff
                    * (c64(0.0, PI) * c * (point[0] * point[0] + point[1] * point[1])).exp(),
                point: *point,
            },
            DistAtom::ChirpWave {
                coeff,
                beta,
                wave,
                note,
            } => DistAtom::ChirpWave {
                coeff: *coeff,
                beta: beta + c,
                wave: *wave,
                note: note.clone(),
            },
        })
        .collect();
    ModDist {
        atoms,
        inv_level: None,
    }
}

/// The dilation `h(x) -> a^{-1} h(x/a)` extended to distributions:
/// a Dirac at `x0` becomes `a · δ` at `a x0`, a chirp wave rescales its
/// parameters and picks up `a^{-1}`.
pub fn dilate_dist(a: f64, d: &ModDist) -> ModDist {
    assert!(a != 0.0);
    let atoms = d
        .atoms
        .iter()
        .map(|atom| match atom {
            DistAtom::Dirac { coeff, point } => DistAtom::Dirac {
                coeff: coeff * a,
                point: [a * point[0], a * point[1]],
            },
            DistAtom::ChirpWave {
                coeff,
                beta,
                wave,
                note,
            } => DistAtom::ChirpWave {
                coeff: coeff / a,
                beta: beta / (a * a),
                wave: [wave[0] / a, wave[1] / a],
                note: note.clone(),
            },
        })
        .collect();
    ModDist {
        atoms,
        inv_level: None,
    }
}

fn wave_is_real(wave: &[Complex64; 2]) -> bool {
    let scale = 1.0 + wave[0].norm() + wave[1].norm();
    wave[0].im.abs() <= 1e-12 * scale && wave[1].im.abs() <= 1e-12 * scale
}

/// Plain Fourier transform on atoms.
///
/// * Dirac at `x0` becomes the plane wave with wave vector `-x0`;
/// * a plane wave with `beta = 0` and real wave vector `w` collapses to the
///   Dirac at `w`;
/// * `beta != 0` stays a chirp wave by the Fresnel formula
///   `(-iβ)^{-1} e^{-iπ(w·w)/β} · CW(-1/β, w/β)`, where `(-iβ)^{-1} = i/β`.
pub fn fourier_dist(d: &ModDist) -> Result<ModDist, DistError> {
    let mut atoms = Vec::with_capacity(d.atoms.len());
    for atom in &d.atoms {
        match atom {
            DistAtom::Dirac { coeff, point } => {
                atoms.push(DistAtom::chirp_wave(
                    *coeff,
                    0.0,
                    [c64(-point[0], 0.0), c64(-point[1], 0.0)],
                ));
            }
            DistAtom::ChirpWave {
                coeff, beta, wave, ..
            } => {
                if *beta == 0.0 {
                    if !wave_is_real(wave) {
                        return Err(DistError::Unsupported(
                            "Fourier transform of a plane wave with complex wave vector"
                                .to_string(),
                        ));
                    }
                    atoms.push(DistAtom::dirac(*coeff, [wave[0].re, wave[1].re]));
                } else {
                    let wsq = wave[0] * wave[0] + wave[1] * wave[1];
                    let factor = c64(0.0, 1.0 / beta) * (c64(0.0, -PI) * wsq / beta).exp();
                    atoms.push(DistAtom::chirp_wave(
                        coeff * factor,
                        -1.0 / beta,
                        [wave[0] / beta, wave[1] / beta],
                    ));
                }
            }
        }
    }
    Ok(ModDist {
        atoms,
        inv_level: None,
    })
}

/// `Ana(g)` transported to distributions through the generator word.
pub fn ana_apply_dist(g: &GroupElement, d: &ModDist) -> Result<ModDist, DistError> {
    let mut out = d.clone();
    for gen in decompose(g)? {
        out = match gen {
            Generator::Chirp(c) => chirp_dist(c, &out),
            Generator::Dilate(a) => dilate_dist(a, &out),
            Generator::Inversion => fourier_dist(&out)?.scaled(c64(0.0, -1.0)),
        };
    }
    Ok(out)
}

/// `q^{s + sigma·2iπA♮}` on distributions: a Dirac picks up `q^{s-sigma}`
/// and moves to `q^{-sigma} x0`; a chirp wave matches the test-function rule.
pub fn anat_power_dist(q: f64, s: f64, sigma: i32, d: &ModDist) -> Result<ModDist, DistError> {
    if q <= 0.0 {
        return Err(DistError::Unsupported(format!(
            "dilation base must be positive, got {q}"
        )));
    }
    assert!(sigma == 1 || sigma == -1, "sigma must be +1 or -1");
    let sg = f64::from(sigma);
    let atoms = d
        .atoms
        .iter()
        .map(|atom| match atom {
            DistAtom::Dirac { coeff, point } => {
                let move_by = q.powf(-sg);
                DistAtom::Dirac {
                    coeff: coeff * q.powf(s - sg),
                    point: [move_by * point[0], move_by * point[1]],
                }
            }
            DistAtom::ChirpWave {
                coeff,
                beta,
                wave,
                note,
            } => {
                let qs = q.powf(sg);
                DistAtom::ChirpWave {
                    coeff: coeff * q.powf(s + sg),
                    beta: beta * qs * qs,
                    wave: [wave[0] * qs, wave[1] * qs],
                    note: note.clone(),
                }
            }
        })
        .collect();
    Ok(ModDist {
        atoms,
        inv_level: None,
    })
}

/// `R^e` for `R = (√p)^{-1-2iπA♮}`: a Dirac moves out to `p^{e/2} x0` with
/// unchanged coefficient, and the invariance exponent drops by `e`.
pub fn r_op(p: u32, e: i32, d: &ModDist) -> Result<ModDist, DistError> {
    check_prime(p)?;
    if e == 0 {
        return Ok(d.clone());
    }
    let q = f64::from(p).powf(f64::from(e.abs()) / 2.0);
    let mut out = if e > 0 {
        anat_power_dist(q, -1.0, -1, d)?
    } else {
        anat_power_dist(q, 1.0, 1, d)?
    };
    out.inv_level = d.inv_level.map(|j| j - i64::from(e));
    Ok(out)
}

fn check_prime(p: u32) -> Result<(), DistError> {
    let prime = p >= 2 && (2..p).take_while(|k| k * k <= p).all(|k| p % k != 0);
    if prime {
        Ok(())
    } else {
        Err(DistError::NotPrime(p))
    }
}

/// `σ_r^{(ℓ)} = p^{-r} Σ_{s mod p^r} τ[s·p^{ℓ-r}]`, the averaged chirp.
///
/// Needs invariance exponent at most `ell` (so the `s`-sum is well defined
/// modulo `p^r`). A Dirac absorbs the whole average as the scalar
/// `p^{-r} Σ_s e^{iπ s p^{ℓ-r} |point|²}`; a chirp wave fans out into `p^r`
/// shifted copies. The result is invariant at exponent `min(j, ℓ-r)`.
pub fn sigma_apply(p: u32, r: u32, ell: i64, d: &ModDist) -> Result<ModDist, DistError> {
    check_prime(p)?;
    match d.inv_level {
        Some(j) if j <= ell => {}
        got => return Err(DistError::Level { needed: ell, got }),
    }
    if r == 0 {
        return Ok(d.clone());
    }
    let pr = u64::from(p).pow(r);
    let step = f64::from(p).powi((ell - i64::from(r)) as i32);
    let norm = 1.0 / pr as f64;
    let mut atoms = Vec::new();
    for atom in &d.atoms {
        match atom {
            DistAtom::Dirac { coeff, point } => {
                let nsq = point[0] * point[0] + point[1] * point[1];
                let mut scalar = c64(0.0, 0.0);
                for s in 0..pr {
                    scalar += (c64(0.0, PI) * (s as f64) * step * nsq).exp();
                }
                atoms.push(DistAtom::Dirac {
                    coeff: coeff * scalar * norm,
                    point: *point,
                });
            }
            DistAtom::ChirpWave {
                coeff,
                beta,
                wave,
                note,
            } => {
                for s in 0..pr {
                    atoms.push(DistAtom::ChirpWave {
                        coeff: coeff * norm,
                        beta: beta + (s as f64) * step,
                        wave: *wave,
                        note: note.clone(),
                    });
                }
            }
        }
    }
    let inv_level = d.inv_level.map(|j| j.min(ell - i64::from(r)));
    Ok(ModDist { atoms, inv_level })
}

/// `σ_r` on the test-function side (`ℓ = 0`), used as its own transpose.
pub fn sigma_on_test(p: u32, r: u32, h: &TestFunction) -> TestFunction {
    if r == 0 {
        return h.clone();
    }
    let pr = u64::from(p).pow(r);
    let norm = c64(1.0 / pr as f64, 0.0);
    let mut atoms = Vec::new();
    for a in h.atoms() {
        for s in 0..pr {
            atoms.push(GaussAtom {
                coeff: a.coeff * norm,
                poly: a.poly.clone(),
                zpar: a.zpar + c64(s as f64 / pr as f64, 0.0),
                wave: a.wave,
            });
        }
    }
    TestFunction::new(atoms)
}

/// The planar Hecke operator `p^{m/2} (R + R^{-1} σ₁)`, defined on
/// distributions invariant under integer chirps.
pub fn tp_plane(p: u32, m: u32, d: &ModDist) -> Result<ModDist, DistError> {
    check_prime(p)?;
    match d.inv_level {
        Some(j) if j <= 0 => {}
        got => return Err(DistError::Level { needed: 0, got }),
    }
    let first = r_op(p, 1, d)?;
    let second = r_op(p, -1, &sigma_apply(p, 1, 0, d)?)?;
    Ok(first.add(&second).scaled(c64(
        f64::from(p).powf(f64::from(m) / 2.0),
        0.0,
    )))
}

/// Extended-Euclid inverse of `c` modulo `|a|`, lifted to `[0, |a|)`.
/// For `a = ±1` the convention is `0`.
pub fn mod_inverse(c: i64, a: i64) -> Result<i64, DistError> {
    assert!(a != 0);
    let m = a.abs();
    if m == 1 {
        return Ok(0);
    }
    let c_red = c.rem_euclid(m);
    let ext = i64::extended_gcd(&c_red, &m);
    if ext.gcd != 1 {
        return Err(DistError::NotCoprime { a, c });
    }
    Ok(ext.x.rem_euclid(m))
}

/// A coprime index pair for the arithmetic atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CosetIndex {
    pub a: i64,
    pub c: i64,
}

impl CosetIndex {
    pub fn new(a: i64, c: i64) -> Result<Self, DistError> {
        if a == 0 && c == 0 {
            return Err(DistError::ZeroIndex);
        }
        if a.gcd(&c) != 1 {
            return Err(DistError::NotCoprime { a, c });
        }
        Ok(CosetIndex { a, c })
    }

    pub fn maxnorm(&self) -> i64 {
        self.a.abs().max(self.c.abs())
    }
}

/// The determinant-one matrix with second column `(-a, -c)` used to produce
/// `I_{a,c}` from `ψ_M`; the first column is the Bezout completion.
pub fn completion(a: i64, c: i64) -> Result<GroupElement, DistError> {
    let idx = CosetIndex::new(a, c)?;
    let (a, c) = (idx.a, idx.c);
    if a == 0 {
        // c = ±1. The matrix (0 0; * *) is degenerate, so these two indices
        // use the unipotent-column form directly.
        return Ok(if c == 1 {
            GroupElement::new(-1.0, 0.0, 0.0, -1.0).expect("unimodular")
        } else {
            GroupElement::identity()
        });
    }
    let cbar = mod_inverse(c, a)?;
    let k = (c * cbar - 1) / a;
    Ok(GroupElement::new(-cbar as f64, -(a as f64), -(k as f64), -(c as f64))
        .expect("Bezout completion is unimodular"))
}

/// `I_{a,c}` in closed form: for `a != 0` the chirp wave
/// `a^{-1} e^{2iπM c̄/a} · e^{iπ(c/a)|x|² + 2iπ x1 √(2M)/a}`,
/// and for `a = 0`, `c = ±1` the reflected or original `ψ_M`.
pub fn i_atom(a: i64, c: i64, m_index: u32) -> Result<ModDist, DistError> {
    if m_index == 0 {
        return Err(DistError::EmptyParameter);
    }
    let idx = CosetIndex::new(a, c)?;
    let (a, c) = (idx.a, idx.c);
    let s = (2.0 * f64::from(m_index)).sqrt();
    if a == 0 {
        return Ok(if c == 1 {
            ModDist::from_atom(DistAtom::dirac(c64(0.0, 1.0), [-s, 0.0]), None)
        } else {
            ModDist::from_atom(DistAtom::dirac(c64(0.0, -1.0), [s, 0.0]), None)
        });
    }
    let cbar = mod_inverse(c, a)?;
    let af = a as f64;
    let phase = (c64(0.0, TAU) * f64::from(m_index) * (cbar as f64) / af).exp();
    let coeff = phase / af;
    Ok(ModDist::from_atom(
        DistAtom::chirp_wave(coeff, (c as f64) / af, [c64(s / af, 0.0), c64(0.0, 0.0)]),
        None,
    ))
}

/// The unnormalized variant `I°_{a,c}` for real indices: same chirp wave,
/// arithmetic phase factor dropped.
pub fn i_atom_real(a: f64, c: f64, m_index: u32) -> Result<ModDist, DistError> {
    if m_index == 0 {
        return Err(DistError::EmptyParameter);
    }
    if a == 0.0 {
        return Err(DistError::Unsupported(
            "real-index atom needs a != 0".to_string(),
        ));
    }
    let s = (2.0 * f64::from(m_index)).sqrt();
    Ok(ModDist::from_atom(
        DistAtom::chirp_wave(c64(1.0 / a, 0.0), c / a, [c64(s / a, 0.0), c64(0.0, 0.0)]),
        None,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep;

    fn gaussian() -> TestFunction {
        TestFunction::gaussian()
    }

    #[test]
    fn psi_pairs_by_evaluation() {
        let d = psi(1).unwrap();
        let got = pair(&d, &gaussian());
        let expect = c64(0.0, -1.0) * (-2.0 * PI).exp();
        assert!((got - expect).norm() < 1e-15);
        assert!(d.level_consistent(2) && d.level_consistent(3));
    }

    #[test]
    fn phi_is_the_inverse_fourier_side_of_psi() {
        let f = fourier_dist(&phi(3).unwrap()).unwrap().scaled(c64(0.0, -1.0));
        let p = psi(3).unwrap();
        match (&f.atoms[0], &p.atoms[0]) {
            (
                DistAtom::Dirac { coeff: c1, point: x1 },
                DistAtom::Dirac { coeff: c2, point: x2 },
            ) => {
                assert!((c1 - c2).norm() < 1e-15);
                assert_eq!(x1, x2);
            }
            _ => panic!("expected Dirac atoms"),
        }
    }

    #[test]
    fn theta_of_psi_closed_form() {
        let z = c64(0.3, 0.8);
        for (m, m_index) in [(11u32, 1u32), (13, 4)] {
            let got = theta_dist(m, &psi(m_index).unwrap(), z).unwrap();
            let expect = c64(0.0, -1.0)
                * (2.0 * f64::from(m_index)).powf(f64::from(m) / 2.0)
                * (c64(0.0, TAU) * f64::from(m_index) * z).exp();
            assert!((got - expect).norm() / expect.norm() < 1e-14);
        }
    }

    #[test]
    fn theta_of_unit_dirac() {
        let d = ModDist::from_atom(DistAtom::dirac(c64(1.0, 0.0), [1.0, 0.0]), None);
        let got = theta_dist(2, &d, c64(0.0, 1.0)).unwrap();
        assert!((got - (-PI).exp()).norm() < 1e-15);
    }

    #[test]
    fn i_atom_special_values() {
        // (1, 0): no chirp, no phase: exactly the plane wave of phi.
        let d = i_atom(1, 0, 5).unwrap();
        match &d.atoms[0] {
            DistAtom::ChirpWave { coeff, beta, wave, .. } => {
                assert!((coeff - c64(1.0, 0.0)).norm() < 1e-15);
                assert_eq!(*beta, 0.0);
                assert!((wave[0] - c64(10.0_f64.sqrt(), 0.0)).norm() < 1e-15);
            }
            _ => panic!("expected chirp wave"),
        }

        // (2, 3): 3̄ = 1 mod 2, coefficient (1/2)(-1)^M.
        for m_index in [1u32, 2] {
            let d = i_atom(2, 3, m_index).unwrap();
            let sign = if m_index % 2 == 0 { 1.0 } else { -1.0 };
            match &d.atoms[0] {
                DistAtom::ChirpWave { coeff, beta, .. } => {
                    assert!((coeff - c64(0.5 * sign, 0.0)).norm() < 1e-12);
                    assert_eq!(*beta, 1.5);
                }
                _ => panic!("expected chirp wave"),
            }
        }

        assert!(matches!(
            i_atom(2, 4, 1),
            Err(DistError::NotCoprime { .. })
        ));
        assert!(matches!(i_atom(0, 0, 1), Err(DistError::ZeroIndex)));
    }

    #[test]
    fn pair_example_at_index_one_zero() {
        let got = pair(&i_atom(1, 0, 1).unwrap(), &gaussian());
        assert!((got - (-TAU).exp()).norm() < 1e-15, "got {got}");
    }

    #[test]
    fn completion_has_second_column_minus_a_minus_c() {
        for (a, c) in [(1i64, 0i64), (2, 3), (-3, 5), (5, -2), (1, 7), (-1, -1)] {
            let g = completion(a, c).unwrap();
            assert_eq!(g.b, -(a as f64));
            assert_eq!(g.d, -(c as f64));
            assert!((g.det() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn generator_route_reproduces_i_atom() {
        for (a, c) in [(1i64, 0i64), (2, 3), (-3, 5), (3, -7), (-4, -9), (7, 2)] {
            let g = completion(a, c).unwrap();
            let via_rep = ana_apply_dist(&g, &psi(2).unwrap()).unwrap();
            let closed = i_atom(a, c, 2).unwrap();
            match (&via_rep.atoms[0], &closed.atoms[0]) {
                (
                    DistAtom::ChirpWave { coeff: c1, beta: b1, wave: w1, .. },
                    DistAtom::ChirpWave { coeff: c2, beta: b2, wave: w2, .. },
                ) => {
                    assert!((c1 - c2).norm() < 1e-10, "coeff mismatch at ({a},{c})");
                    assert_eq!(b1, b2, "chirp mismatch at ({a},{c})");
                    assert_eq!(w1, w2, "wave mismatch at ({a},{c})");
                }
                _ => panic!("expected chirp waves at ({a},{c})"),
            }
        }
    }

    #[test]
    fn index_zero_atoms_come_from_their_completions() {
        let i01 = i_atom(0, 1, 3).unwrap();
        let route = ana_apply_dist(&completion(0, 1).unwrap(), &psi(3).unwrap()).unwrap();
        match (&i01.atoms[0], &route.atoms[0]) {
            (
                DistAtom::Dirac { coeff: c1, point: x1 },
                DistAtom::Dirac { coeff: c2, point: x2 },
            ) => {
                assert!((c1 - c2).norm() < 1e-15);
                assert_eq!(x1, x2);
            }
            _ => panic!("expected Dirac atoms"),
        }

        let i0m1 = i_atom(0, -1, 3).unwrap();
        match &i0m1.atoms[0] {
            DistAtom::Dirac { coeff, point } => {
                assert!((coeff - c64(0.0, -1.0)).norm() < 1e-15);
                assert!((point[0] - 6.0_f64.sqrt()).abs() < 1e-15);
            }
            _ => panic!("expected Dirac"),
        }
    }

    #[test]
    fn sigma_zero_is_identity_and_sigma_collapses_psi() {
        let d = psi(4).unwrap();
        let s0 = sigma_apply(2, 0, 0, &d).unwrap();
        assert!((pair(&s0, &gaussian()) - pair(&d, &gaussian())).norm() < 1e-15);

        // p^r | M keeps psi, otherwise kills it.
        for (p, r, m_index, survives) in [
            (2u32, 1u32, 4u32, true),
            (2, 2, 4, true),
            (2, 3, 4, false),
            (3, 1, 4, false),
            (2, 1, 3, false),
            (3, 1, 6, true),
        ] {
            let s = sigma_apply(p, r, 0, &psi(m_index).unwrap()).unwrap();
            let got = pair(&s, &gaussian());
            let expect = if survives {
                pair(&psi(m_index).unwrap(), &gaussian())
            } else {
                c64(0.0, 0.0)
            };
            assert!(
                (got - expect).norm() < 1e-12,
                "p={p} r={r} M={m_index}: got {got}, expected {expect}"
            );
        }
    }

    #[test]
    fn sigma_scalar_on_unit_circle_dirac() {
        // S(2, x) = (1 + e^{iπ/2})/2 = (1+i)/2 at |x|² = 1.
        // The tag is caller-asserted bookkeeping; here only the scalar is
        // under test.
        let d = ModDist::from_atom(DistAtom::dirac(c64(1.0, 0.0), [1.0, 0.0]), Some(0));
        let s = sigma_apply(2, 1, 0, &d).unwrap();
        match &s.atoms[0] {
            DistAtom::Dirac { coeff, .. } => {
                assert!((coeff - c64(0.5, 0.5)).norm() < 1e-15, "got {coeff}");
            }
            _ => panic!("expected Dirac"),
        }
    }

    #[test]
    fn sigma_level_bookkeeping() {
        let d = psi(4).unwrap();
        assert!(matches!(
            sigma_apply(2, 1, -1, &d),
            Err(DistError::Level { .. })
        ));
        let s = sigma_apply(2, 2, 0, &d).unwrap();
        assert_eq!(s.inv_level, Some(-2));
        let moved = r_op(2, -1, &s).unwrap();
        assert_eq!(moved.inv_level, Some(-1));
        assert!(moved.level_consistent(2));
    }

    #[test]
    fn r_op_moves_diracs_and_levels() {
        let d = psi(1).unwrap();
        let up = r_op(3, 1, &d).unwrap();
        match &up.atoms[0] {
            DistAtom::Dirac { coeff, point } => {
                assert!((coeff - c64(0.0, -1.0)).norm() < 1e-15);
                assert!((point[0] - 6.0_f64.sqrt()).abs() < 1e-14);
            }
            _ => panic!("expected Dirac"),
        }
        assert_eq!(up.inv_level, Some(-1));
        assert!(up.level_consistent(3));

        let back = r_op(3, -1, &up).unwrap();
        match &back.atoms[0] {
            DistAtom::Dirac { coeff, point } => {
                assert!((coeff - c64(0.0, -1.0)).norm() < 1e-15);
                assert!((point[0] - 2.0_f64.sqrt()).abs() < 1e-14);
            }
            _ => panic!("expected Dirac"),
        }
        assert_eq!(back.inv_level, Some(0));
    }

    #[test]
    fn tp_plane_on_psi_matches_the_q_side() {
        let z = c64(0.1, 0.9);
        for (p, m, m_index) in [(2u32, 11u32, 1u32), (3, 11, 1), (2, 13, 4), (3, 13, 6)] {
            let d = psi(m_index).unwrap();
            let td = tp_plane(p, m, &d).unwrap();
            let lhs = theta_dist(m, &td, z).unwrap();

            let f = |w: Complex64| theta_dist(m, &d, w).unwrap();
            let pf = f64::from(p);
            let mut rhs = pf.powi(m as i32) * f(pf * z);
            for s in 0..p {
                rhs += f((z + f64::from(s)) / pf) / pf;
            }
            assert!(
                (lhs - rhs).norm() / (1.0 + rhs.norm()) < 1e-12,
                "p={p} m={m} M={m_index}: lhs {lhs} rhs {rhs}"
            );
        }
    }

    #[test]
    fn tp_plane_divisible_case_gains_the_collapsed_atom() {
        let (p, m, m_index) = (2u32, 11u32, 4u32);
        let td = tp_plane(p, m, &psi(m_index).unwrap()).unwrap();
        let z = c64(0.0, 1.0);
        let extra = c64(0.0, -1.0)
            * (2.0 * f64::from(m_index)).powf(f64::from(m) / 2.0)
            * (c64(0.0, TAU) * f64::from(m_index / p) * z).exp();
        let full = theta_dist(m, &td, z).unwrap();
        let main = c64(0.0, -1.0)
            * f64::from(p).powi(m as i32)
            * (2.0 * f64::from(m_index)).powf(f64::from(m) / 2.0)
            * (c64(0.0, TAU) * f64::from(m_index) * f64::from(p) * z).exp();
        assert!((full - main - extra).norm() / (1.0 + full.norm()) < 1e-12);
    }

    #[test]
    fn operator_forms_of_tp_agree() {
        // (R + R^{-1}σ₁) D = (R + σ₁^{(1)} R^{-1}) D on combinations of ψ_M.
        let d = psi(2).unwrap().add(&psi(6).unwrap().scaled(c64(0.3, -0.2)));
        for p in [2u32, 3] {
            let route_a = r_op(p, -1, &sigma_apply(p, 1, 0, &d).unwrap()).unwrap();
            let route_b = sigma_apply(p, 1, 1, &r_op(p, -1, &d).unwrap()).unwrap();
            let h = gaussian();
            let va = pair(&route_a, &h);
            let vb = pair(&route_b, &h);
            assert!((va - vb).norm() < 1e-12, "p={p}: {va} vs {vb}");
            assert_eq!(route_a.inv_level, route_b.inv_level);
        }
    }

    #[test]
    fn fresnel_fourier_roundtrip_on_chirp_waves() {
        // F² = reflection, checked through pairings against a generic atom.
        let d = i_atom(3, 2, 1).unwrap();
        let ff = fourier_dist(&fourier_dist(&d).unwrap()).unwrap();
        let h = TestFunction::from_atom(GaussAtom::new(
            c64(0.7, -0.1),
            crate::poly::Poly2::angular(1),
            c64(0.2, 1.3),
            [c64(0.3, 0.0), c64(-0.4, 0.1)],
        ));
        let reflected = rep::reflect(&h);
        let lhs = pair(&ff, &h);
        let rhs = pair(&d, &reflected);
        assert!((lhs - rhs).norm() / (1.0 + rhs.norm()) < 1e-12, "{lhs} vs {rhs}");
    }

    #[test]
    fn mod_inverse_values() {
        assert_eq!(mod_inverse(3, 2).unwrap(), 1);
        assert_eq!(mod_inverse(7, 1).unwrap(), 0);
        assert_eq!(mod_inverse(7, -1).unwrap(), 0);
        assert_eq!(mod_inverse(2, 5).unwrap(), 3);
        assert_eq!(mod_inverse(-3, 5).unwrap(), 3);
        assert_eq!(mod_inverse(5, -7).unwrap(), 3);
        assert!(mod_inverse(4, 6).is_err());
    }
}
