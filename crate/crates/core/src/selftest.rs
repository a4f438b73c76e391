//! Randomized identity suites for the algebra, the Hopf fibrations and the
//! causal dictionary of asymptotic lifts. Seeded, so runs are reproducible.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cliffalg::{causal_character, conj, exp_fiber, inner, AdSPoint, CausalClass, SplitQuat};
use crate::hopf::{double_cover, fiber, hopf_map, HopfAxis};
use crate::lift::{causal_class_of_angle, xi, LIGHTLIKE_TOL};
use crate::report::{Check, VerificationReport};

pub const DEFAULT_SEED: u64 = 0x5eed_ad5f;
pub const SUITE_TOL: f64 = 1e-10;

fn any(rng: &mut ChaCha8Rng) -> SplitQuat {
    SplitQuat::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

fn imag(rng: &mut ChaCha8Rng) -> SplitQuat {
    any(rng).imag_part()
}

/// A point of H³₁ by normalizing a random element with `⟨q, q⟩ ≤ −0.25`.
pub fn random_ads(rng: &mut ChaCha8Rng) -> AdSPoint {
    loop {
        let q = any(rng);
        let n = q.norm_sq();
        if n <= -0.25 {
            return AdSPoint::new(q / (-n).sqrt()).expect("normalized");
        }
    }
}

/// A normalized axis of the requested class (`None` for any).
fn random_axis(rng: &mut ChaCha8Rng, class: Option<i8>) -> HopfAxis {
    loop {
        let r = imag(rng);
        if r.euclid_norm() < 0.1 {
            continue;
        }
        let r = match class {
            // force ⟨ρ,ρ⟩ = 0 by matching |ρ_i| to the (j,k) norm
            Some(0) => {
                let s = r.j_c.hypot(r.k_c);
                SplitQuat::imag(s * r.i_c.signum(), r.j_c, r.k_c)
            }
            _ => r,
        };
        let Ok(a) = HopfAxis::new(r) else { continue };
        if class.is_none_or(|c| c == a.norm_class()) {
            return a;
        }
    }
}

struct Max(f64);

impl Max {
    fn see(&mut self, x: f64) {
        if !(x <= self.0) {
            self.0 = if x.is_nan() { f64::INFINITY } else { x };
        }
    }
}

fn rel(d: SplitQuat, scale: f64) -> f64 {
    d.max_abs() / scale.max(1.0)
}

/// Algebra identities on `n` random samples.
pub fn algebra_suite(n: usize, seed: u64) -> VerificationReport {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (one, i, j, k) = (SplitQuat::ONE, SplitQuat::I, SplitQuat::J, SplitQuat::K);
    let table = [
        (i * i, -one),
        (i * j, k),
        (i * k, -j),
        (j * i, -k),
        (j * j, one),
        (j * k, -i),
        (k * i, j),
        (k * j, i),
        (k * k, one),
    ];
    let table_ok = table.iter().all(|(a, b)| a == b);

    let (mut anti, mut p1, mut p2, mut p3, mut p4, mut assoc) = (Max(0.0), Max(0.0), Max(0.0), Max(0.0), Max(0.0), Max(0.0));
    for _ in 0..n {
        let (a, b, c) = (any(&mut rng), any(&mut rng), any(&mut rng));
        let (ea, eb, ec) = (a.euclid_norm(), b.euclid_norm(), c.euclid_norm());
        anti.see(rel(conj(a * b) - conj(b) * conj(a), ea * eb));
        assoc.see(rel((a * b) * c - a * (b * c), ea * eb * ec));
        // z z̄ = −⟨z,z⟩
        p1.see(rel(a * a.conj() - SplitQuat::real(-inner(a, a)), ea * ea));
        // ⟨z₁,z₂⟩ = −Re(z₁ z̄₂)
        p2.see((inner(a, b) + (a * b.conj()).re).abs() / (ea * eb).max(1.0));
        // z ∈ H³₁ ⟺ z⁻¹ = z̄
        let z = random_ads(&mut rng).q();
        p3.see(rel(z * z.conj() - one, z.euclid_norm().powi(2)).max(rel(z.conj() * z - one, z.euclid_norm().powi(2))));
        // bi-invariance
        let (z1, z2) = (random_ads(&mut rng).q(), random_ads(&mut rng).q());
        let lhs = inner(z1 * a * z2, z1 * b * z2);
        let scale = (z1.euclid_norm() * z2.euclid_norm()).powi(2) * ea * eb;
        p4.see((lhs - inner(a, b)).abs() / scale.max(1.0));
    }
    let mut r = VerificationReport::default();
    r.push(Check::flag("multiplication_table", table_ok));
    r.push(Check::at_most("conj_anti_homomorphism", anti.0, SUITE_TOL));
    r.push(Check::at_most("associativity", assoc.0, SUITE_TOL));
    r.push(Check::at_most("norm_via_conjugate", p1.0, SUITE_TOL));
    r.push(Check::at_most("inner_via_real_part", p2.0, SUITE_TOL));
    r.push(Check::at_most("unit_inverse_is_conjugate", p3.0, SUITE_TOL));
    r.push(Check::at_most("bi_invariance", p4.0, SUITE_TOL));
    r.note("algebra_samples", n);
    r.note("algebra_seconds", t0.elapsed().as_secs_f64());
    r
}

/// Hopf fibration identities on `n` random samples.
pub fn hopf_suite(n: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x40bf);
    let (mut h1, mut h2, mut finv, mut expo) = (Max(0.0), Max(0.0), Max(0.0), Max(0.0));
    let mut sign_ok = true;
    let mut cover_exact = true;
    for m in 0..n {
        let class = [Some(-1), Some(0), Some(1)][m % 3];
        let rho = random_axis(&mut rng, class);
        let eta = random_axis(&mut rng, None);
        let z = random_ads(&mut rng);
        let s = z.q().euclid_norm().powi(2);
        let hr = hopf_map(&rho, z);
        let he = hopf_map(&eta, z);
        let scale = s * rho.rho().euclid_norm() * eta.rho().euclid_norm() * s;
        h1.see(hr.re.abs() / (s * rho.rho().euclid_norm()).max(1.0));
        h2.see((inner(hr, he) - inner(rho.rho(), eta.rho())).abs() / scale.max(1.0));
        if rho.norm_class() <= 0 {
            sign_ok &= inner(hr, SplitQuat::I).signum() == inner(rho.rho(), SplitQuat::I).signum();
        }
        let t = rng.gen_range(-2.0..2.0);
        let zt = fiber(&rho, z, t);
        finv.see(rel(hopf_map(&rho, zt) - hr, zt.q().euclid_norm().powi(2) * rho.rho().euclid_norm()));
        let t2 = rng.gen_range(-2.0..2.0);
        let e = |x: f64| exp_fiber(rho.rho(), x).expect("normalized axis");
        expo.see(rel(e(t) * e(t2) - e(t + t2), e(t).euclid_norm() * e(t2).euclid_norm()));
        cover_exact &= double_cover(z.neg()) == double_cover(z);
    }
    let mut r = VerificationReport::default();
    r.push(Check::at_most("hopf_pure_imaginary", h1.0, SUITE_TOL));
    r.push(Check::at_most("hopf_preserves_inner", h2.0, SUITE_TOL));
    r.push(Check::flag("hopf_preserves_sheet", sign_ok));
    r.push(Check::at_most("fiber_invariance", finv.0, SUITE_TOL));
    r.push(Check::at_most("fiber_exponential_law", expo.0, SUITE_TOL));
    r.push(Check::flag("double_cover_even", cover_exact));
    r.note("hopf_samples", n);
    r
}

/// Causal character of `a'` (sign of `−cos 2ω`) against `(1 − cot²ω)/(1 + cot²ω)`
/// and the lightlike band `||cot ω| − 1| ≤ 1e-9`.
pub fn causal_suite(n: usize, seed: u64) -> VerificationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xca05);
    let mut omegas: Vec<f64> = (0..n).map(|_| rng.gen_range(1e-6..PI - 1e-6)).collect();
    // the two lightlike angles and tight neighbourhoods of them
    for base in [PI / 4.0, 3.0 * PI / 4.0] {
        omegas.push(base);
        for e in [1e-13, 1e-11, 1e-10, 1e-9, 1e-8, 1e-6] {
            omegas.push(base + e);
            omegas.push(base - e);
        }
    }
    let (mut sign_mismatch, mut band_mismatch, mut ambient_mismatch) = (0usize, 0usize, 0usize);
    for &w in &omegas {
        let cot = w.cos() / w.sin();
        let gap = cot.abs() - 1.0;
        let class = causal_class_of_angle(w);
        if gap.abs() <= LIGHTLIKE_TOL {
            band_mismatch += (class != CausalClass::Lightlike) as usize;
            continue;
        }
        band_mismatch += (class == CausalClass::Lightlike) as usize;
        let dict = (1.0 - cot * cot) / (1.0 + cot * cot);
        let speed = -(2.0 * w).cos();
        // compare signs only where both expressions are resolved in floating point
        if gap.abs() > 1e-6 {
            sign_mismatch += (speed.signum() != dict.signum()) as usize;
            let expect = if dict < 0.0 { CausalClass::Timelike } else { CausalClass::Spacelike };
            sign_mismatch += (class != expect) as usize;
            ambient_mismatch += (causal_character(xi(w), 0.0) != expect) as usize;
        }
    }
    let mut r = VerificationReport::default();
    r.push(Check::at_most("causal_sign_mismatches", sign_mismatch as f64, 0.0));
    r.push(Check::at_most("causal_ambient_mismatches", ambient_mismatch as f64, 0.0));
    r.push(Check::at_most("lightlike_band_mismatches", band_mismatch as f64, 0.0));
    r.note("causal_samples", omegas.len());
    r
}

/// All three suites at the default sizes.
pub fn run_all(seed: u64) -> VerificationReport {
    let mut r = algebra_suite(10_000, seed);
    r.extend(hopf_suite(1_000, seed));
    r.extend(causal_suite(10_000, seed));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_on_small_samples() {
        let r = run_all(7);
        assert!(r.all_pass(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn random_axes_have_requested_class() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for c in [-1, 0, 1] {
            assert_eq!(random_axis(&mut rng, Some(c)).norm_class(), c);
        }
    }
}
