use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use qforms::{
    delta, eigen_defect, eigenform, hecke_q, primes_up_to, ramanujan_check, ramanujan_gap,
    Weight24, DIM_ONE_WEIGHTS,
};

#[test]
fn tau_values_through_twenty() {
    // Coefficients of the discriminant form, against a hand-held table.
    let d = delta(20);
    let tau = [
        1i64, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920, 534612, -370944,
        -577738, 401856, 1217160, 987136, -6905934, 2727432, 10661420, -7109760,
    ];
    for (n, t) in tau.iter().enumerate() {
        assert_eq!(d.int_coeff(n + 1), BigInt::from(*t), "tau({})", n + 1);
    }
}

#[test]
fn hecke_operators_commute() {
    let f = eigenform(16, 180).unwrap();
    let a = hecke_q(3, &hecke_q(2, &f));
    let b = hecke_q(2, &hecke_q(3, &f));
    assert_eq!(a.trunc(), b.trunc());
    assert_eq!(a, b);
}

#[test]
fn eigen_identities_for_small_primes() {
    for w in DIM_ONE_WEIGHTS {
        let f = eigenform(w, 256).unwrap();
        for p in primes_up_to(20) {
            assert_eq!(eigen_defect(p, &f), None, "T_{p} at weight {w}");
        }
    }
}

#[test]
fn coefficient_bound_up_to_97() {
    for w in DIM_ONE_WEIGHTS {
        let f = eigenform(w, 128).unwrap();
        for p in primes_up_to(97) {
            let gap = ramanujan_gap(p, &f);
            assert!(
                !gap.is_negative(),
                "bound fails at weight {w}, p = {p}: gap {gap}"
            );
        }
    }
}

#[test]
fn weight24_pair_is_exactly_eigen() {
    let w = Weight24::build(96);
    assert_eq!(w.d, BigInt::from(144169));
    for which in [0, 1] {
        for p in [2u32, 3, 5, 7] {
            assert_eq!(w.eigen_defect(which, p), None, "T_{p} on branch {which}");
        }
        for p in primes_up_to(89) {
            assert!(w.ramanujan_holds(which, p), "bound at p={p} branch {which}");
        }
    }
}

#[test]
fn weight24_coefficients_are_algebraic_integers_summing_rationally() {
    // The two eigenforms are Galois conjugates, so their coefficient sums
    // are rational: b_n(f+) + b_n(f-) has no sqrt part, and the difference
    // is a pure multiple of sqrt(D).
    let w = Weight24::build(48);
    for n in 1..=24 {
        let s = w.coeff(0, n).add(&w.coeff(1, n));
        let d = w.coeff(0, n).sub(&w.coeff(1, n));
        assert!(s.b.is_zero() && s.a.is_integer(), "trace at q^{n}");
        assert!(d.a.is_zero(), "difference at q^{n}");
    }
}

#[test]
fn report_for_the_exact_weights_passes() {
    let report = ramanujan_check(&DIM_ONE_WEIGHTS, 97, 20, 220, 1, 1).unwrap();
    assert!(report.pass);
    // 25 primes up to 97 for each of 6 weights, bound checks plus the eigen
    // checks for the 8 primes up to 20.
    let bound_checks = report.checks.iter().filter(|c| c.id.ends_with("bound")).count();
    assert_eq!(bound_checks, 6 * 25);
    let eigen_checks = report.checks.iter().filter(|c| c.id.ends_with("eigen")).count();
    assert_eq!(eigen_checks, 6 * 8);

    let doc = vreport::emit_json(&report, vreport::Timing::Strip);
    let back = vreport::parse_json(&doc).unwrap();
    assert_eq!(back, report);
}

#[test]
fn report_covers_weight24_when_asked() {
    let report = ramanujan_check(&[24], 7, 3, 64, 1, 1).unwrap();
    assert!(report.pass);
    assert_eq!(report.params.get("weight24_disc").unwrap(), "144169");
    assert!(report.checks.iter().any(|c| c.id.starts_with("w24plus/")));
    assert!(report.checks.iter().any(|c| c.id.starts_with("w24minus/")));
}
