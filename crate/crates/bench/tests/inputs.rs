use adsflat_bench::{grid, lifted_pair};
use adsflat_core::synthesize;

#[test]
fn bench_inputs_build_a_patch() {
    let g = grid(21);
    assert_eq!(g.u.len, 21);
    assert!((g.u.end() - 2.0).abs() < 1e-12);
    let (a1, a2) = lifted_pair();
    let p = synthesize(&a1, &a2, &g).unwrap();
    assert!(p.min_sine() > 0.0);
}
