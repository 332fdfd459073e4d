//! Reduction of validated level-0 words to the shape `R^E sigma_r`.
//!
//! Everything rests on one exact conjugation identity.  With `R` the
//! normalised dilation and `tau[beta]` the radial chirp,
//!
//! ```text
//!     R^(-l) tau[beta] R^l = tau[beta p^l]        for every integer l,
//! ```
//!
//! because dilating by `p^(l/2)` scales `|x|^2` by `p^l` inside the chirp
//! exponent.  Two consequences drive the rewriter:
//!
//! 1. `sigma_r^(l) = R^(-l) sigma_r R^l` exactly, which eliminates the
//!    superscripted averages.
//! 2. Any product of `R` powers and `sigma` averages, applied to a level-0
//!    distribution, equals `R^E sigma_r` for a single pair `(E, r)`: move
//!    every chirp next to the input by conjugation, then collapse the
//!    resulting multiset of chirp parameters using the input's invariance.
//!
//! For consequence 2, absorb symbols right to left into a state `(E, r)`
//! standing for `R^E sigma_r`:
//!
//! * `R^g` just shifts `E` by `g`;
//! * `sigma_rho` becomes, after conjugation past `R^E`, an average of
//!   `tau[s / p^(rho - E)]` over `s mod p^rho`.  It acts on `sigma_r h`,
//!   which is invariant under `tau[p^(-r)]`, so `s` only matters modulo
//!   `p^(rho - E - r)`.  If that exponent is `<= 0` the average is the
//!   identity; otherwise the surviving `s` classes combine with the inner
//!   average of `tau[u / p^r]` into one uniform average of
//!   `tau[v / p^(rho - E)]` over `v mod p^(rho - E)`, i.e. `sigma_(rho-E)`.
//!   Both cases read `(E, r) -> (E, max(r, rho - E))`.
//!
//! The well-definedness of each average along the way (independence of the
//! residue representatives) is exactly what [`validate`] checks, so the
//! state machine runs only on validated words.
//!
//! [`rewrite_by_relations`] reduces the same words by literal pattern
//! replacement with the commutation relations instead, tracking no state.
//! The two implementations are independent and the test suite holds them
//! against each other.

use crate::normal::NormalForm;
use crate::word::{validate, HeckeWord, WordError, WordSymbol};

/// Rewrites a validated word on level 0 into its normal form, a single term
/// `R^E sigma_r` embedded in the smallest fitting degree.
pub fn rewrite(word: &HeckeWord) -> Result<NormalForm, WordError> {
    let (e, r) = reduce_state(word)?;
    Ok(NormalForm::single_term(e, r))
}

/// The `(E, r)` reduction behind [`rewrite`], exposed for callers that want
/// the raw exponent pair (the brute-force expansion accumulates these).
pub fn reduce_state(word: &HeckeWord) -> Result<(i64, u32), WordError> {
    if word.domain_level != 0 {
        return Err(WordError::NotLevelZero {
            level: word.domain_level,
        });
    }
    validate(word)?;
    let mut e: i64 = 0;
    let mut r: i64 = 0;
    for (position, sym) in word.symbols.iter().enumerate().rev() {
        match sym {
            WordSymbol::Rpow { e: g } => e += g,
            WordSymbol::Sigma { r: rho } => r = r.max(i64::from(*rho) - e),
            WordSymbol::SigmaSup { r: rho, ell } => {
                // R^(-l) sigma_rho R^l seen from the state: the inner R^l
                // raises E to E + l for the absorption, the outer R^(-l)
                // puts it back.
                r = r.max(i64::from(*rho) - (e + ell));
            }
            WordSymbol::Tau { .. } => return Err(WordError::FreeTau { position }),
        }
    }
    debug_assert!(r >= 0);
    Ok((e, u32::try_from(r).expect("sigma depth fits in u32")))
}

/// Internal token alphabet for the pattern rewriter: runs of `R` and single
/// averages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    R(i64),
    S(u32),
}

/// Rewrites by literal repeated application of the commutation relations:
///
/// ```text
///  (3)  sigma_r R                 -> R sigma_(r-1)               (r >= 1)
///  (4)  sigma_r R^(-1) sigma_1    -> R^(-1) sigma_(r+1)
///  (4') sigma_r R^(-1) sigma_rho  -> sigma_max(r,rho-1) R^(-1) sigma_1
///  (5)  sigma_r sigma_rho         -> sigma_max(r,rho)
///  (6)  sigma_r R^(-f) sigma_rho  -> sigma_r R^(-f+1) sigma_(rho-1)
///                                     R^(-1) sigma_1   (2 <= f <= rho)
///  (7)  sigma_r R^(-f) sigma_rho  -> sigma_r R^(-f)    (2 <= f,  rho < f)
/// ```
///
/// with adjacent `R` runs merged eagerly and identity factors dropped.  Rule
/// (4) is an exact operator identity (write both sides as one average of
/// `p^(r+1)` chirps over `R^(-1)`); (4') and (6) peel it backwards; (3), (5)
/// and (7) hold in any context a validated word provides.  Rules fire
/// leftmost, with all `R` merging done first so (3) never sees a positive
/// level on its right.  This is the slow, assumption-light counterpart of
/// [`rewrite`].
pub fn rewrite_by_relations(word: &HeckeWord) -> Result<NormalForm, WordError> {
    let (e, r) = reduce_by_relations(word)?;
    Ok(NormalForm::single_term(e, r))
}

/// The `(E, r)` pair behind [`rewrite_by_relations`].
pub fn reduce_by_relations(word: &HeckeWord) -> Result<(i64, u32), WordError> {
    if word.domain_level != 0 {
        return Err(WordError::NotLevelZero {
            level: word.domain_level,
        });
    }
    validate(word)?;
    let mut toks = Vec::with_capacity(word.symbols.len());
    for (position, sym) in word.symbols.iter().enumerate() {
        match sym {
            WordSymbol::Rpow { e } => toks.push(Tok::R(*e)),
            WordSymbol::Sigma { r } => toks.push(Tok::S(*r)),
            WordSymbol::SigmaSup { r, ell } => {
                if *ell != 0 {
                    toks.push(Tok::R(-ell));
                }
                toks.push(Tok::S(*r));
                if *ell != 0 {
                    toks.push(Tok::R(*ell));
                }
            }
            WordSymbol::Tau { .. } => return Err(WordError::FreeTau { position }),
        }
    }

    let weight: usize = toks
        .iter()
        .map(|t| match t {
            Tok::R(e) => e.unsigned_abs() as usize,
            Tok::S(r) => *r as usize,
        })
        .sum();
    let cap = 64 * (weight + toks.len() + 4) * (weight + toks.len() + 4);
    for _ in 0..cap {
        if !step_once(&mut toks) {
            return Ok(read_reduced(&toks));
        }
    }
    unreachable!("pattern rewriting exceeded its termination bound");
}

/// Applies one rule and reports whether anything changed.
fn step_once(toks: &mut Vec<Tok>) -> bool {
    // Merging and identity dropping first, anywhere in the string.
    for i in 0..toks.len() {
        match toks[i] {
            Tok::R(0) | Tok::S(0) => {
                toks.remove(i);
                return true;
            }
            _ => {}
        }
        if i + 1 < toks.len() {
            if let (Tok::R(a), Tok::R(b)) = (toks[i], toks[i + 1]) {
                toks[i] = Tok::R(a + b);
                toks.remove(i + 1);
                return true;
            }
        }
    }
    // Sigma rules, leftmost first.
    for i in 0..toks.len() {
        let Tok::S(r) = toks[i] else { continue };
        match toks.get(i + 1) {
            Some(&Tok::S(rho)) => {
                toks[i] = Tok::S(r.max(rho));
                toks.remove(i + 1);
                return true;
            }
            Some(&Tok::R(e)) if e > 0 => {
                toks[i] = Tok::R(1);
                toks[i + 1] = Tok::S(r - 1);
                if e > 1 {
                    toks.insert(i + 2, Tok::R(e - 1));
                }
                return true;
            }
            Some(&Tok::R(-1)) => match toks.get(i + 2) {
                Some(&Tok::S(1)) => {
                    toks[i] = Tok::R(-1);
                    toks[i + 1] = Tok::S(r + 1);
                    toks.remove(i + 2);
                    return true;
                }
                Some(&Tok::S(rho)) if rho >= 2 => {
                    toks[i] = Tok::S(r.max(rho - 1));
                    toks[i + 2] = Tok::S(1);
                    return true;
                }
                _ => {}
            },
            Some(&Tok::R(e)) if e <= -2 => {
                if let Some(&Tok::S(rho)) = toks.get(i + 2) {
                    if i64::from(rho) < -e {
                        // For sigma_r here to be well defined the context
                        // level j must satisfy min(j, -rho) <= e, which for
                        // rho < -e forces j <= e < -rho: the inner average
                        // then acts on a tau[p^(-rho)]-invariant input and
                        // is the identity.
                        toks.remove(i + 2);
                    } else {
                        // rho >= -e >= 2: peel one exact step of
                        // R^(-1) sigma_rho = sigma_(rho-1) R^(-1) sigma_1.
                        toks[i + 1] = Tok::R(e + 1);
                        toks[i + 2] = Tok::S(rho - 1);
                        toks.insert(i + 3, Tok::R(-1));
                        toks.insert(i + 4, Tok::S(1));
                    }
                    return true;
                }
            }
            _ => {}
        }
    }
    false
}

fn read_reduced(toks: &[Tok]) -> (i64, u32) {
    match toks {
        [] => (0, 0),
        [Tok::R(e)] => (*e, 0),
        [Tok::S(r)] => (0, *r),
        [Tok::R(e), Tok::S(r)] => (*e, *r),
        other => panic!("token string did not reduce: {other:?}"),
    }
}
