//! The central intertwining property at verification scale: two hundred
//! sampled (group element, atom, half-plane point) triples per weight.

use planar::checks::intertwine_check;
use planar::rep::intertwine_residual;
use planar::sample::Sampler;
use planar::TestFunction;

#[test]
fn two_hundred_sampled_triples_stay_under_tolerance() {
    let report = intertwine_check(100, 1e-9, 2024, 1).unwrap();
    assert!(report.pass, "{:#?}", report.checks);
    assert!(report.max_residual() < 1e-9);
}

#[test]
fn multi_atom_test_functions_intertwine_too() {
    // The check driver samples single atoms; sums of atoms follow by
    // linearity, but the residual normalization differs, so spot-check.
    let mut sampler = Sampler::new(555);
    for m in [11u32, 13] {
        for _ in 0..20 {
            let g = sampler.group_element();
            let h = sampler.test_function();
            let z = sampler.halfplane_point();
            let r = intertwine_residual(m, &g, &h, z).unwrap();
            assert!(r < 1e-9, "m={m} residual {r:.3e} for {g:?}");
        }
    }
}

#[test]
fn residual_is_scale_invariant() {
    let mut sampler = Sampler::new(808);
    let g = sampler.group_element();
    let h = TestFunction::from_atom(sampler.atom());
    let z = sampler.halfplane_point();
    let r1 = intertwine_residual(11, &g, &h, z).unwrap();
    let r2 = intertwine_residual(11, &g, &h.scaled(num_complex::Complex64::new(1e6, 0.0)), z)
        .unwrap();
    // Relative normalization keeps huge rescalings from hiding failures.
    assert!(r2 < 1e-6, "scaled residual {r2:.3e}");
    assert!(r1 < 1e-9);
}
