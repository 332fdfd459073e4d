//! Assembles the coefficient-bound verification report.

use num_bigint::BigInt;
use num_traits::Signed;
use vreport::{CheckEntry, CheckKind, VerificationReport};

use crate::hecke::{eigen_defect, eigenform, ramanujan_gap, QformError};
use crate::quad::Weight24;

/// Primes up to `n`, by sieve.
pub fn primes_up_to(n: u32) -> Vec<u32> {
    let n = n as usize;
    let mut is_prime = vec![true; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if is_prime[p] {
            out.push(p as u32);
            let mut m = p * p;
            while m <= n {
                is_prime[m] = false;
                m += p;
            }
        }
    }
    out
}

/// Runs the coefficient bound `b_p^2 <= 4 p^(k-1)` for every requested
/// weight at every prime up to `prime_cap`, plus exact eigenform identities
/// `T_p f = b_p f` for primes up to `eigen_cap`.
///
/// Weights with a one-dimensional cusp space run over the integers; weight
/// 24 runs both eigenforms exactly in its quadratic field.  The expansion
/// length `trunc` caps how far the eigen identities can be checked
/// (`trunc / p` coefficients at prime `p`).
pub fn ramanujan_check(
    weights: &[u32],
    prime_cap: u32,
    eigen_cap: u32,
    trunc: usize,
    seed: u64,
    threads: u32,
) -> Result<VerificationReport, QformError> {
    let mut report = VerificationReport::new("ramanujan", seed, threads);
    report.param("weights", format!("{weights:?}"));
    report.param("prime_cap", prime_cap.to_string());
    report.param("eigen_cap", eigen_cap.to_string());
    report.param("trunc", trunc.to_string());
    let primes = primes_up_to(prime_cap);

    for &w in weights {
        if w == 24 {
            check_weight24(&mut report, &primes, eigen_cap, trunc);
            continue;
        }
        let f = eigenform(w, trunc)?;
        for &p in &primes {
            if (p as usize) > f.trunc() {
                break;
            }
            let gap = ramanujan_gap(p, &f);
            let bp = f.int_coeff(p as usize);
            report.push(CheckEntry {
                id: format!("w{w}/p{p}/bound"),
                measured: (&bp * &bp).to_string(),
                budget: (BigInt::from(4) * BigInt::from(p).pow(w - 1)).to_string(),
                kind: CheckKind::Property,
                pass: !gap.is_negative(),
                detail: Some(format!("b_p = {bp}")),
            });
            if p <= eigen_cap {
                let defect = eigen_defect(p, &f);
                report.push(CheckEntry {
                    id: format!("w{w}/p{p}/eigen"),
                    measured: match defect {
                        None => "exact".into(),
                        Some(n) => format!("mismatch at q^{n}"),
                    },
                    budget: "exact".into(),
                    kind: CheckKind::ExactEq,
                    pass: defect.is_none(),
                    detail: None,
                });
            }
        }
    }
    Ok(report)
}

fn check_weight24(report: &mut VerificationReport, primes: &[u32], eigen_cap: u32, trunc: usize) {
    let w24 = Weight24::build(trunc);
    report.param("weight24_disc", w24.d.to_string());
    for (which, tag) in [(0usize, "plus"), (1usize, "minus")] {
        for &p in primes {
            if (p as usize) > w24.h1.trunc() {
                break;
            }
            let bp = w24.coeff(which, p as usize);
            report.push(CheckEntry {
                id: format!("w24{tag}/p{p}/bound"),
                measured: bp.mul(&bp).display(),
                budget: (BigInt::from(4) * BigInt::from(p).pow(23)).to_string(),
                kind: CheckKind::Property,
                pass: w24.ramanujan_holds(which, p),
                detail: Some(format!("b_p = {}", bp.display())),
            });
            if p <= eigen_cap {
                let defect = w24.eigen_defect(which, p);
                report.push(CheckEntry {
                    id: format!("w24{tag}/p{p}/eigen"),
                    measured: match defect {
                        None => "exact".into(),
                        Some(n) => format!("mismatch at q^{n}"),
                    },
                    budget: "exact".into(),
                    kind: CheckKind::ExactEq,
                    pass: defect.is_none(),
                    detail: None,
                });
            }
        }
    }
}
