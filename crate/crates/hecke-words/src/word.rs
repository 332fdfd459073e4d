use std::fmt;

use num_rational::Ratio;
use thiserror::Error;

/// One factor of a word, in the operator alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WordSymbol {
    /// `R^e`, the normalised dilation by `p^(e/2)`. `e` may be negative but
    /// not zero; use no symbol at all for the identity.
    Rpow { e: i64 },
    /// `sigma_r`: the average of `tau[s/p^r]` over `s mod p^r`. `sigma_0` is
    /// the identity and is accepted for uniformity.
    Sigma { r: u32 },
    /// `sigma_r^(l)`: the average of `tau[s p^(l-r)]` over `s mod p^r`,
    /// the level-`l` incarnation of `sigma_r`.
    SigmaSup { r: u32, ell: i64 },
    /// `tau[beta]`: multiplication by the radial chirp of parameter `beta`.
    /// Appears when sigma averages are unfolded; the rewriter does not accept
    /// free-standing `tau` factors.
    Tau { beta: Ratio<i64> },
}

impl WordSymbol {
    pub fn r() -> Self {
        WordSymbol::Rpow { e: 1 }
    }

    pub fn r_inv() -> Self {
        WordSymbol::Rpow { e: -1 }
    }

    pub fn r_pow(e: i64) -> Self {
        assert!(e != 0, "R^0 is the empty word, not a symbol");
        WordSymbol::Rpow { e }
    }

    pub fn sigma(r: u32) -> Self {
        WordSymbol::Sigma { r }
    }

    pub fn sigma_sup(r: u32, ell: i64) -> Self {
        WordSymbol::SigmaSup { r, ell }
    }

    pub fn tau(beta: Ratio<i64>) -> Self {
        WordSymbol::Tau { beta }
    }
}

impl fmt::Display for WordSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordSymbol::Rpow { e: 1 } => write!(f, "R"),
            WordSymbol::Rpow { e } => write!(f, "R^{e}"),
            WordSymbol::Sigma { r } => write!(f, "sigma_{r}"),
            WordSymbol::SigmaSup { r, ell } => write!(f, "sigma_{r}^({ell})"),
            WordSymbol::Tau { beta } => write!(f, "tau[{beta}]"),
        }
    }
}

/// A product of symbols acting on a distribution of known level.
///
/// `symbols[0]` is the leftmost factor, i.e. the one applied **last**; the
/// word acts right-to-left, as written.  `domain_level` is the level of the
/// distributions the word is meant to act on (level `j` = invariant under
/// `tau[p^j]`).  The Hecke normal form lives on level 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeWord {
    pub symbols: Vec<WordSymbol>,
    pub domain_level: i64,
}

impl HeckeWord {
    /// A word acting on level-0 (`tau[1]`-invariant) distributions.
    pub fn on_level_zero(symbols: Vec<WordSymbol>) -> Self {
        HeckeWord {
            symbols,
            domain_level: 0,
        }
    }

    pub fn on_level(symbols: Vec<WordSymbol>, domain_level: i64) -> Self {
        HeckeWord {
            symbols,
            domain_level,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

impl fmt::Display for HeckeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            write!(f, "I")?;
        } else {
            for (i, s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s}")?;
            }
        }
        write!(f, "  on level {}", self.domain_level)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    /// A chirp average was applied where its defining sum depends on the
    /// choice of residue representatives, so it is not an operator at all.
    #[error(
        "symbol {symbol} at position {position} (from the left) is ill defined: \
         it needs input level <= {needed}, got level {got}"
    )]
    IllDefined {
        position: usize,
        symbol: String,
        needed: i64,
        got: i64,
    },
    /// Strict validation refuses compositions that are only meaningful
    /// because the input happens to lie in a smaller space than the
    /// operator's nominal domain.
    #[error(
        "symbol {symbol} at position {position} (from the left) needs level \
         exactly {needed}, got level {got}; the composition is only defined \
         by extension"
    )]
    ExtensionOnly {
        position: usize,
        symbol: String,
        needed: i64,
        got: i64,
    },
    /// The rewriter works over the `R`/`sigma` alphabet only.
    #[error("free-standing tau factor at position {position} cannot be rewritten")]
    FreeTau { position: usize },
    /// The normal form identities are statements about operators on level-0
    /// distributions; rewriting a word declared on another level would use
    /// them outside their range.
    #[error("rewriting needs a level-0 domain, got level {level}")]
    NotLevelZero { level: i64 },
}

/// The per-symbol level bookkeeping produced by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainTrace {
    /// Level after each symbol acts, rightmost symbol first; the last entry
    /// is the level of the word's output.
    pub levels_after: Vec<i64>,
    /// Positions (indices into `symbols`, leftmost = 0) of chirp averages
    /// that were applied below their nominal level and so are defined only
    /// by restriction from the larger space.
    pub extension_positions: Vec<usize>,
}

impl DomainTrace {
    pub fn output_level(&self, input_level: i64) -> i64 {
        *self.levels_after.last().unwrap_or(&input_level)
    }
}

fn step(
    sym: &WordSymbol,
    position: usize,
    level: i64,
    trace: &mut DomainTrace,
) -> Result<i64, WordError> {
    match sym {
        WordSymbol::Rpow { e } => Ok(level - e),
        WordSymbol::Sigma { r } => {
            // The sum over s mod p^r is representative independent iff
            // shifting s by p^r changes nothing, i.e. iff tau[1] acts as the
            // identity: level <= 0.
            if level > 0 {
                return Err(WordError::IllDefined {
                    position,
                    symbol: sym.to_string(),
                    needed: 0,
                    got: level,
                });
            }
            if level < 0 {
                trace.extension_positions.push(position);
            }
            // Averaging over tau[s/p^r] makes the output tau[p^(-r)]
            // invariant; it keeps any invariance the input already had.
            Ok(level.min(-(i64::from(*r))))
        }
        WordSymbol::SigmaSup { r, ell } => {
            // Same argument one level up: representatives shift beta by p^ell.
            if level > *ell {
                return Err(WordError::IllDefined {
                    position,
                    symbol: sym.to_string(),
                    needed: *ell,
                    got: level,
                });
            }
            if level < *ell {
                trace.extension_positions.push(position);
            }
            Ok(level.min(ell - i64::from(*r)))
        }
        WordSymbol::Tau { beta } => {
            // tau[beta] tau[p^j] = tau[p^j] tau[beta], so multiplication by a
            // chirp preserves every level.  Nothing to check.
            let _ = beta;
            Ok(level)
        }
    }
}

/// Checks that every chirp average in the word is a well defined operator
/// along the way, starting from `word.domain_level` and applying symbols
/// right to left.
///
/// Applications that only make sense because the intermediate distribution
/// sits in a space smaller than the average's nominal domain are accepted but
/// recorded in [`DomainTrace::extension_positions`]; use [`validate_strict`]
/// to refuse them outright.
pub fn validate(word: &HeckeWord) -> Result<DomainTrace, WordError> {
    let mut trace = DomainTrace {
        levels_after: Vec::with_capacity(word.symbols.len()),
        extension_positions: Vec::new(),
    };
    let mut level = word.domain_level;
    for (position, sym) in word.symbols.iter().enumerate().rev() {
        level = step(sym, position, level, &mut trace)?;
        trace.levels_after.push(level);
    }
    trace.extension_positions.sort_unstable();
    Ok(trace)
}

/// Like [`validate`], but refuses any chirp average not applied at its exact
/// nominal level: `sigma_r` wants level 0 and `sigma_r^(l)` wants level `l`,
/// and a word such as `sigma_1` acting on a level `-1` intermediate is
/// rejected rather than flagged.
pub fn validate_strict(word: &HeckeWord) -> Result<DomainTrace, WordError> {
    let trace = validate(word)?;
    if let Some(&position) = trace.extension_positions.first() {
        let sym = &word.symbols[position];
        let needed = match sym {
            WordSymbol::Sigma { .. } => 0,
            WordSymbol::SigmaSup { ell, .. } => *ell,
            _ => unreachable!("only chirp averages are flagged"),
        };
        // Recompute the level this symbol saw.
        let idx_from_right = word.symbols.len() - 1 - position;
        let got = if idx_from_right == 0 {
            word.domain_level
        } else {
            trace.levels_after[idx_from_right - 1]
        };
        return Err(WordError::ExtensionOnly {
            position,
            symbol: sym.to_string(),
            needed,
            got,
        });
    }
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dilation_shifts_level() {
        let w = HeckeWord::on_level_zero(vec![WordSymbol::r_pow(3)]);
        let t = validate(&w).unwrap();
        assert_eq!(t.output_level(0), -3);
    }

    #[test]
    fn sigma_after_inverse_dilation_is_ill_defined() {
        // R^(-1) sends level 0 to level 1, where the sigma_1 average depends
        // on representatives.
        let w = HeckeWord::on_level_zero(vec![WordSymbol::sigma(1), WordSymbol::r_inv()]);
        let err = validate(&w).unwrap_err();
        assert_eq!(
            err,
            WordError::IllDefined {
                position: 0,
                symbol: "sigma_1".into(),
                needed: 0,
                got: 1,
            }
        );
    }

    #[test]
    fn sigma_below_level_is_flagged_not_rejected() {
        // sigma_2 output has level -2; the following sigma_1 only acts by
        // restriction.
        let w = HeckeWord::on_level_zero(vec![WordSymbol::sigma(1), WordSymbol::sigma(2)]);
        let t = validate(&w).unwrap();
        assert_eq!(t.extension_positions, vec![0]);
        assert!(matches!(
            validate_strict(&w),
            Err(WordError::ExtensionOnly { position: 0, .. })
        ));
    }

    #[test]
    fn sup_variant_wants_its_own_level() {
        let w = HeckeWord::on_level(vec![WordSymbol::sigma_sup(1, 1)], 1);
        let t = validate_strict(&w).unwrap();
        assert_eq!(t.output_level(1), 0);

        let too_high = HeckeWord::on_level(vec![WordSymbol::sigma_sup(1, 1)], 2);
        assert!(matches!(
            validate(&too_high),
            Err(WordError::IllDefined { .. })
        ));
    }

    #[test]
    fn tau_preserves_level() {
        let w = HeckeWord::on_level_zero(vec![
            WordSymbol::sigma(1),
            WordSymbol::tau(Ratio::new(1, 2)),
        ]);
        let t = validate(&w).unwrap();
        assert_eq!(t.extension_positions, Vec::<usize>::new());
        assert_eq!(t.output_level(0), -1);
    }
}
