//! Inputs shared by the benchmarks in `benches/`.

use adsflat_core::fronts::{make_front_from_curvature, prepare};
use adsflat_core::lift::asymptotic_lift;
use adsflat_core::{AsymptoticCurve, FrontCurve, Grid, UniformAxis};

/// `ω(s) = base + 0.2 sin(s + phase)` on `[-r, r]`.
pub fn wavy_front(base: f64, phase: f64, r: f64) -> FrontCurve {
    make_front_from_curvature(&move |s| base + 0.2 * (s + phase).sin(), -r, r, 1e-3, None).expect("regular front")
}

/// Lifted admissible pair covering `[-2, 2]`.
pub fn lifted_pair() -> (AsymptoticCurve, AsymptoticCurve) {
    let lift = |g: FrontCurve| asymptotic_lift(&prepare(&g).unwrap(), 1).unwrap();
    (lift(wavy_front(0.6, 0.0, 2.2)), lift(wavy_front(1.8, std::f64::consts::FRAC_PI_2, 2.2)))
}

/// Square grid over `[-2, 2]` with `n` nodes per side.
pub fn grid(n: usize) -> Grid {
    Grid::square(UniformAxis::new(-2.0, 4.0 / (n - 1) as f64, n).unwrap())
}
