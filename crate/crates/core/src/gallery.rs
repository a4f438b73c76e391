//! Canonical constructions: Hopf cylinders and tori, flat tori from pairs of
//! circles, and the counterexamples to the Q1/Q2/Q4 questions on flat
//! Lorentzian surfaces. Each one is also a named scenario.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::cliffalg::{exp_imag, inner, SplitQuat};
use crate::error::{Error, Result};
use crate::fronts::{acot, check_admissible, circle_period, constant_curvature_front, make_front_from_curvature, prepare, AdmissiblePair, FrontCurve};
use crate::hopf::HopfAxis;
use crate::lift::{arc_length_resample, asymptotic_lift, asymptotic_reparametrize, xi, AsymptoticCurve, CurveSource, FnCurve};
use crate::report::{Check, VerificationReport};
use crate::sampling::{adaptive_simpson, UniformAxis};
use crate::surface::{completeness_check, synthesize, torus_check, verify_patch, AngleProfile, Completeness, CompletenessOptions, FlatSurfacePatch, Grid, Tolerances};

/// Sampling step of generating curves.
pub const CURVE_STEP: f64 = 1e-3;
const ADMISSIBLE_SAMPLES: usize = 2001;

/// Parameter reach needed for a grid, with room for difference stencils.
pub fn reach(grid: &Grid) -> f64 {
    [grid.u.start, grid.u.end(), grid.v.start, grid.v.end()].iter().fold(0.0f64, |m, x| m.max(x.abs())) + 0.2
}

/// Circle (or horocycle, or equidistant) of curvature `k` over `[-r, r]`,
/// extended past one period when closed.
pub fn circle(k: f64, r: f64) -> Result<FrontCurve> {
    let hi = circle_period(k).map_or(r, |l| r.max(l + 0.1));
    constant_curvature_front(k, -r, hi, CURVE_STEP)
}

pub struct Built {
    pub patch: FlatSurfacePatch,
    pub pair: AdmissiblePair,
}

/// Front pair → prepared, admissible pair → lifts → patch.
pub fn build_from_fronts(g1: &FrontCurve, g2: &FrontCurve, grid: &Grid) -> Result<Built> {
    let pair = check_admissible(&prepare(g1)?, &prepare(g2)?, ADMISSIBLE_SAMPLES)?;
    let a1 = asymptotic_lift(&pair.gamma1, 1)?;
    let a2 = asymptotic_lift(&pair.gamma2, 1)?;
    let patch = synthesize(&a1, &a2, grid)?;
    Ok(Built { patch, pair })
}

// ---------------------------------------------------------------- Hopf

/// `ω₀ ∈ (0, π]` with `ρ ∝ ±(cos ω₀ i + sin ω₀ k)`.
pub fn fiber_angle(axis: &HopfAxis) -> Result<f64> {
    let r = axis.rho();
    if r.j_c.abs() > 1e-12 * r.euclid_norm() {
        return Err(Error::Hypothesis(format!("fiber axis must be orthogonal to j, got j-component {:e}", r.j_c)));
    }
    let w = r.k_c.atan2(r.i_c).rem_euclid(PI);
    Ok(if w <= 0.0 { PI } else { w })
}

/// The fiber `v ↦ exp(v·ξ(ω₀))` through 1, in its asymptotic parameter.
pub fn fiber_curve(axis: &HopfAxis, r: f64) -> Result<AsymptoticCurve> {
    let w0 = fiber_angle(axis)?;
    let c2 = (2.0 * w0).cos();
    let period = (c2 > 1e-12).then(|| PI / c2.sqrt());
    let hi = period.map_or(r, |l| r.max(l + 0.1));
    let ax = UniformAxis::covering(-r, hi, CURVE_STEP)?;
    let x = xi(w0);
    let points = ax.nodes().map(|v| exp_imag(x, v)).collect();
    AsymptoticCurve::from_samples(ax, points, vec![w0; ax.len], period)
}

pub struct HopfCylinder {
    pub axis: HopfAxis,
    pub fiber_omega: f64,
    pub patch: FlatSurfacePatch,
}

/// Patch whose `v`-curves are left translates of the fibers of `h_ρ`; the
/// partner front supplies the other asymptotic family.
pub fn hopf_cylinder(axis: &HopfAxis, partner: &FrontCurve, grid: &Grid) -> Result<HopfCylinder> {
    let a1 = asymptotic_lift(&prepare(partner)?, 1)?;
    let fiber = fiber_curve(axis, reach(grid))?;
    let patch = synthesize(&a1, &fiber, grid)?;
    Ok(HopfCylinder { axis: *axis, fiber_omega: fiber_angle(axis)?, patch })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberCurvature {
    pub norm_class: i8,
    /// Angle function of the reparametrized fiber (constant).
    pub omega0: f64,
    /// Largest deviation of the angle samples from `omega0`.
    pub omega_spread: f64,
    /// `cot ω₀`; infinite for `ρ = ±i`.
    pub curvature: f64,
    /// Sine of the angle between `ξ(ω₀)` and `ρ`.
    pub direction_residual: f64,
    /// Whether `|k|` sits on the side of 1 that `⟨ρ,ρ⟩` predicts.
    pub class_matches: bool,
}

/// Curvature of the fiber front, read off the asymptotic reparametrization of `t ↦ exp(tρ)`.
pub fn fiber_curvature(axis: &HopfAxis) -> Result<FiberCurvature> {
    fiber_angle(axis)?;
    let rho = axis.rho();
    let c = FnCurve {
        domain: (-1.0, 1.0),
        f: move |t: f64| {
            let a = exp_imag(rho, t);
            (a, a * rho)
        },
    };
    let re = asymptotic_reparametrize(&c, CURVE_STEP)?;
    let ws = re.curve.omega_samples();
    let w = ws[re.curve.axis().nearest(0.0)];
    let omega_spread = ws.iter().map(|x| (x - w).abs()).fold(0.0, f64::max);
    let curvature = if w.sin() == 0.0 { f64::INFINITY } else { w.cos() / w.sin() };
    let direction_residual = (w.cos() * rho.k_c - w.sin() * rho.i_c).abs() / rho.euclid_norm();
    let kk = curvature.abs();
    let class_matches = match axis.norm_class() {
        -1 => kk > 1.0 + 1e-8,
        0 => (kk - 1.0).abs() <= 1e-8,
        _ => kk < 1.0 - 1e-8,
    };
    Ok(FiberCurvature { norm_class: axis.norm_class(), omega0: w, omega_spread, curvature, direction_residual, class_matches })
}

/// One axis per causal class, all orthogonal to `j`.
pub fn dictionary_axes() -> Result<[HopfAxis; 3]> {
    Ok([
        HopfAxis::new(SplitQuat::imag(2.0, 0.0, 1.0))?,
        HopfAxis::new(SplitQuat::imag(1.0, 0.0, -1.0))?,
        HopfAxis::new(SplitQuat::imag(0.5, 0.0, 1.0))?,
    ])
}

// ---------------------------------------------------------------- Q4

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Q4Variant {
    /// Circles `k₁ = 3`, `k₂ = 1.4`.
    Circles,
    /// Curvature bands `k₁ ∈ [2.5, 3]`, `k₂ ∈ [1.2, 1.5]`.
    Bands,
    /// `k₁ = 3`, `k₂ = 0`: one timelike and one spacelike lift.
    Control,
}

pub fn q4_fronts(variant: Q4Variant, r: f64) -> Result<(FrontCurve, FrontCurve)> {
    Ok(match variant {
        Q4Variant::Circles => (circle(3.0, r)?, circle(1.4, r)?),
        Q4Variant::Bands => (
            make_front_from_curvature(&|s| acot(2.75 + 0.25 * s.sin()), -r, r, CURVE_STEP, None)?,
            make_front_from_curvature(&|s| acot(1.35 + 0.15 * s.sin()), -r, r, CURVE_STEP, None)?,
        ),
        Q4Variant::Control => (circle(3.0, r)?, circle(0.0, r)?),
    })
}

pub struct Q4 {
    pub patch: FlatSurfacePatch,
    /// `max ⟨aᵢ′, aᵢ′⟩` over the sampled curves.
    pub max_speed_sq: [f64; 2],
    /// `min ⟨aᵢ′, aᵢ′⟩`.
    pub min_speed_sq: [f64; 2],
    pub min_sine: f64,
}

pub fn dn_q4_counterexample(variant: Q4Variant, grid: &Grid) -> Result<Q4> {
    let (g1, g2) = q4_fronts(variant, reach(grid))?;
    let patch = build_from_fronts(&g1, &g2, grid)?.patch;
    let ext = |c: &AsymptoticCurve| {
        let s = c.speed_sq();
        (s.iter().copied().fold(f64::NEG_INFINITY, f64::max), s.iter().copied().fold(f64::INFINITY, f64::min))
    };
    let (hi1, lo1) = ext(patch.a1());
    let (hi2, lo2) = ext(patch.a2());
    let min_sine = patch.min_sine();
    Ok(Q4 { patch, max_speed_sq: [hi1, hi2], min_speed_sq: [lo1, lo2], min_sine })
}

// ---------------------------------------------------------------- Q2

/// `ω₁(u) = ½ arccos(c₀/(1+u²))`.
pub fn q2_omega1(c0: f64) -> impl Fn(f64) -> f64 + Copy {
    move |u: f64| 0.5 * (c0 / (1.0 + u * u)).acos()
}

/// Breakpoints `0, 1, 2, 4, …, t` for integrals with slowly decaying tails.
fn dyadic(t: f64) -> Vec<f64> {
    let mut out = vec![0.0];
    let mut x = 1.0;
    while x < t {
        out.push(x);
        x *= 2.0;
    }
    out.push(t);
    out
}

fn integrate_dyadic(f: &dyn Fn(f64) -> f64, t: f64) -> f64 {
    dyadic(t).windows(2).map(|w| adaptive_simpson(f, w[0], w[1], 1e-14 * (w[1] - w[0]).max(1.0))).sum()
}

/// Length of the diagonal `(t, t)`, `0 ≤ t ≤ T`, in `du² + 2cos ω du dv + dv²`
/// with `ω = π/2 + 2ω₁`: `∫ √(2(1 − sin 2ω₁))`.
pub fn q2_diagonal_length(c0: f64, t: f64) -> f64 {
    // 1 − √(1 − c²) = c²/(1 + √(1 − c²)) avoids the cancellation in the tail
    let f = move |x: f64| {
        let c = c0 / (1.0 + x * x);
        c * (2.0 / (1.0 + (1.0 - c * c).sqrt())).sqrt()
    };
    integrate_dyadic(&f, t)
}

/// `∫₀^T √(cos 2ω₁) du`, which diverges like `√c₀ ln T`.
pub fn q2_axis_integral(c0: f64, t: f64) -> f64 {
    let f = move |x: f64| (c0 / (1.0 + x * x)).sqrt();
    integrate_dyadic(&f, t)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Q2Measurements {
    pub c0: f64,
    pub t: f64,
    /// `(T, L(T))`, T increasing.
    pub diagonal: Vec<(f64, f64)>,
    /// `(T, ∫₀^T √(cos 2ω₁))`.
    pub axis_integral: Vec<(f64, f64)>,
    pub completeness: Completeness,
    /// `min (|u| − |s|)` over both re-parametrized arc-length curves.
    pub reparam_margin: f64,
}

pub struct Q2 {
    pub patch: FlatSurfacePatch,
    pub measurements: Q2Measurements,
}

/// `min(|u| − |s(u)|)` after resampling by arc length and returning to the asymptotic parameter.
fn reparam_margin(c: &AsymptoticCurve) -> Result<f64> {
    let b = arc_length_resample(c, CURVE_STEP)?;
    let back = asymptotic_reparametrize(&b, CURVE_STEP)?;
    let ax = back.curve.axis();
    Ok(ax.nodes().zip(&back.s_of_u).map(|(u, s)| u.abs() - s.abs()).fold(f64::INFINITY, f64::min))
}

pub fn dn_q2_counterexample(c0: f64, t: f64, grid: &Grid) -> Result<Q2> {
    if !(c0 > 0.0 && c0 < 1.0) {
        return Err(Error::Spec(format!("c0 must lie in (0, 1), got {c0}")));
    }
    if !(t >= 10.0) || !t.is_finite() {
        return Err(Error::Spec(format!("T must be finite and at least 10, got {t}")));
    }
    let w1 = q2_omega1(c0);
    let r = reach(grid);
    let g1 = make_front_from_curvature(&w1, -r, r, CURVE_STEP, None)?;
    let g2 = make_front_from_curvature(&move |v| FRAC_PI_2 - w1(v), -r, r, CURVE_STEP, None)?;
    let patch = build_from_fronts(&g1, &g2, grid)?.patch;

    let mut ts = vec![];
    let mut x = t;
    while x >= 10.0 - 1e-9 && ts.len() < 4 {
        ts.push(x);
        x /= 10.0;
    }
    ts.reverse();
    let diagonal = ts.iter().map(|&x| (x, q2_diagonal_length(c0, x))).collect();
    let axis_integral = ts.iter().map(|&x| (x, q2_axis_integral(c0, x))).collect();

    let w2 = move |v: f64| FRAC_PI_2 + w1(v);
    let p1 = AngleProfile { omega: &w1, min: -t, max: t };
    let p2 = AngleProfile { omega: &w2, min: -t, max: t };
    let completeness = completeness_check(&p1, &p2, &CompletenessOptions::default());
    let reparam_margin = reparam_margin(patch.a1())?.min(reparam_margin(patch.a2())?);
    let measurements = Q2Measurements { c0, t, diagonal, axis_integral, completeness, reparam_margin };
    Ok(Q2 { patch, measurements })
}

// ---------------------------------------------------------------- Q1

/// `b₁' = b₁(cosh θ i + sinh θ k)` with `tanh θ = 1/2` (unit timelike, the
/// lift of a `k = 2` circle) and `b₂ = exp(t k)` (unit spacelike).
pub fn q1_curves(r: f64) -> (impl CurveSource, impl CurveSource) {
    let th = 0.5f64.atanh();
    let x1 = SplitQuat::imag(th.cosh(), 0.0, th.sinh());
    let b1 = FnCurve {
        domain: (-r, r),
        f: move |t: f64| {
            let a = exp_imag(x1, t);
            (a, a * x1)
        },
    };
    let b2 = FnCurve {
        domain: (-r, r),
        f: move |t: f64| {
            let a = exp_imag(SplitQuat::K, t);
            (a, a * SplitQuat::K)
        },
    };
    (b1, b2)
}

pub struct Q1 {
    pub patch: FlatSurfacePatch,
    /// The curves were exchanged (the patch is conjugated) to satisfy sine positivity.
    pub swapped: bool,
    pub min_sine: f64,
    /// `min |det I|` from the ambient products of `f_u`, `f_v` on the grid.
    pub min_abs_det: f64,
}

fn unit_causal(c: &dyn CurveSource, sign: f64, name: &str) -> Result<()> {
    let (lo, hi) = c.domain();
    let n = 200;
    for k in 0..=n {
        let s = lo + (hi - lo) * k as f64 / n as f64;
        let (_, d) = c.eval(s)?;
        let q = d.norm_sq();
        if (q - sign).abs() > 1e-8 {
            return Err(Error::Hypothesis(format!("{name}: ⟨b', b'⟩ = {q} at {s}, expected {sign}")));
        }
    }
    let d = (c.eval(0.0)?.0 - SplitQuat::ONE).max_abs();
    if d > 1e-12 {
        return Err(Error::Hypothesis(format!("{name}(0) must be 1 (defect {d:e})")));
    }
    Ok(())
}

/// From a unit timelike and a unit spacelike curve to a patch without singular points.
pub fn dn_q1_demo(b1: &dyn CurveSource, b2: &dyn CurveSource, grid: &Grid) -> Result<Q1> {
    unit_causal(b1, -1.0, "b1")?;
    unit_causal(b2, 1.0, "b2")?;
    let a1 = asymptotic_reparametrize(b1, CURVE_STEP)?.curve;
    let a2 = asymptotic_reparametrize(b2, CURVE_STEP)?.curve;
    let (patch, swapped) = match synthesize(&a1, &a2, grid) {
        Ok(p) => (p, false),
        Err(Error::SinePositivity { .. }) => (synthesize(&a2, &a1, grid)?, true),
        Err(e) => return Err(e),
    };
    let g = *patch.grid();
    let mut min_abs_det = f64::INFINITY;
    for u in g.u.nodes() {
        for v in g.v.nodes() {
            let (fu, fv) = patch.f_partials(u, v)?;
            let det = inner(fu, fu) * inner(fv, fv) - inner(fu, fv).powi(2);
            min_abs_det = min_abs_det.min(det.abs());
        }
    }
    let min_sine = patch.min_sine();
    Ok(Q1 { patch, swapped, min_sine, min_abs_det })
}

// ---------------------------------------------------------------- registry

pub const SCENARIOS: [(&str, &str); 9] = [
    ("hopf-torus", "fibers of h_i over a closed k = 3 circle: a Lorentzian Hopf torus"),
    ("hopf-cylinder", "spacelike-axis fibers (k = cot 3π/8) over a k = 3 circle: an open cylinder"),
    ("hopf-dictionary", "fiber-front curvature against the causal class of the axis"),
    ("flat-torus", "closed circles k₁ = 3, k₂ = 1.4: a flat torus with regular binormals"),
    ("dn-q4", "two timelike asymptotic families from circles k₁ = 3, k₂ = 1.4"),
    ("dn-q4-bands", "two timelike asymptotic families from curvature bands [2.5, 3] and [1.2, 1.5]"),
    ("dn-q4-control", "k₁ = 3, k₂ = 0: one timelike and one spacelike family"),
    ("dn-q2", "cos 2ω₁ = c₀/(1+u²): a divergent diagonal of finite length"),
    ("dn-q1", "unit timelike and spacelike curves: a patch with no singular points"),
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScenarioOptions {
    pub grid: Grid,
    pub tol: Tolerances,
    pub c0: f64,
    pub t: f64,
    /// Run the full patch verification in addition to the scenario checks.
    pub verify: bool,
}

impl Default for ScenarioOptions {
    fn default() -> Self {
        ScenarioOptions { grid: Grid::verification_default(), tol: Tolerances::default(), c0: 0.99, t: 1e4, verify: true }
    }
}

pub struct ScenarioOutcome {
    pub name: String,
    pub patch: Option<FlatSurfacePatch>,
    pub report: VerificationReport,
}

fn q4_report(variant: Q4Variant, grid: &Grid) -> Result<(FlatSurfacePatch, VerificationReport)> {
    let q = dn_q4_counterexample(variant, grid)?;
    let mut r = VerificationReport::default();
    r.push(Check::at_most("a1_timelike", q.max_speed_sq[0], -0.1));
    match variant {
        Q4Variant::Control => r.push(Check::at_least("a2_spacelike", q.min_speed_sq[1], 0.1)),
        _ => r.push(Check::at_most("a2_timelike", q.max_speed_sq[1], -0.1)),
    }
    r.push(Check::at_least("min_sine", q.min_sine, 0.05));
    r.note("max_speed_sq", q.max_speed_sq);
    r.note("min_speed_sq", q.min_speed_sq);
    r.note("min_sine", q.min_sine);
    Ok((q.patch, r))
}

/// Closure, binormal and torus-verdict checks for a patch built from two closed fronts.
pub fn torus_checks(patch: &FlatSurfacePatch, r: &mut VerificationReport) {
    let t = torus_check(patch);
    let res = |c: &Option<crate::lift::ClosureRecord>| c.map_or(f64::INFINITY, |c| c.residual);
    r.push(Check::at_most("closure_a1", res(&t.closure1), crate::lift::CLOSED_TOL));
    r.push(Check::at_most("closure_a2", res(&t.closure2), crate::lift::CLOSED_TOL));
    let speed = |b: &Option<crate::surface::torus::BinormalReport>| b.map_or(0.0, |b| b.min_speed);
    r.push(Check::at_least("beta1_min_speed", speed(&t.beta1), 0.1));
    r.push(Check::at_least("beta2_min_speed", speed(&t.beta2), 0.1));
    r.push(Check::flag("torus", t.is_torus));
    r.note("torus", &t);
}

/// Run a named scenario.
pub fn run_scenario(name: &str, opts: &ScenarioOptions) -> Result<ScenarioOutcome> {
    let grid = &opts.grid;
    let r0 = reach(grid);
    let mut r = VerificationReport::default();
    let patch = match name {
        "hopf-torus" => {
            let h = hopf_cylinder(&HopfAxis::i(), &circle(3.0, r0)?, grid)?;
            torus_checks(&h.patch, &mut r);
            r.note("fiber_omega", h.fiber_omega);
            Some(h.patch)
        }
        "hopf-cylinder" => {
            let w = 3.0 * PI / 8.0;
            let axis = HopfAxis::new(xi(w))?;
            let h = hopf_cylinder(&axis, &circle(3.0, r0)?, grid)?;
            let fc = fiber_curvature(&axis)?;
            r.push(Check::flag("fiber_curvature_class", fc.class_matches));
            r.push(Check::at_most("fiber_curvature", (fc.curvature - 1.0 / w.tan()).abs(), 1e-8));
            let t = torus_check(&h.patch);
            r.push(Check::flag("not_torus", !t.is_torus));
            r.note("fiber", fc);
            Some(h.patch)
        }
        "hopf-dictionary" => {
            for axis in dictionary_axes()? {
                let fc = fiber_curvature(&axis)?;
                let tag = match axis.norm_class() {
                    -1 => "timelike",
                    0 => "lightlike",
                    _ => "spacelike",
                };
                r.push(Check::flag(format!("dictionary_{tag}"), fc.class_matches));
                r.push(Check::at_most(format!("direction_{tag}"), fc.direction_residual, 1e-8));
                r.push(Check::at_most(format!("constant_angle_{tag}"), fc.omega_spread, 1e-8));
                r.note(format!("fiber_{tag}"), fc);
            }
            None
        }
        "flat-torus" => {
            let b = build_from_fronts(&circle(3.0, r0)?, &circle(1.4, r0)?, grid)?;
            torus_checks(&b.patch, &mut r);
            r.note("separation", b.pair.separation);
            Some(b.patch)
        }
        "dn-q4" | "dn-q4-bands" | "dn-q4-control" => {
            let variant = match name {
                "dn-q4" => Q4Variant::Circles,
                "dn-q4-bands" => Q4Variant::Bands,
                _ => Q4Variant::Control,
            };
            let (p, rep) = q4_report(variant, grid)?;
            r.extend(rep);
            Some(p)
        }
        "dn-q2" => {
            let q = dn_q2_counterexample(opts.c0, opts.t, grid)?;
            let m = &q.measurements;
            let n = m.diagonal.len();
            if n >= 2 {
                let (l_prev, l_last) = (m.diagonal[n - 2].1, m.diagonal[n - 1].1);
                r.push(Check::at_most("diagonal_converges", (l_last - l_prev).abs(), 1e-2));
                let monotone = m.diagonal.windows(2).all(|w| w[1].1 > w[0].1);
                r.push(Check::flag("diagonal_monotone", monotone));
                let (a_prev, a_last) = (m.axis_integral[n - 2].1, m.axis_integral[n - 1].1);
                r.push(Check::at_least("axis_integral_growth", a_last - a_prev, 0.5 * 10f64.ln() * opts.c0.sqrt()));
            }
            let diag = matches!(&m.completeness, Completeness::SuspectedIncomplete { witness, .. } if witness.kind == "diagonal");
            r.push(Check::flag("suspected_incomplete_diagonal", diag));
            r.push(Check::at_least("reparam_margin", m.reparam_margin, -1e-9));
            r.note("q2", m);
            Some(q.patch)
        }
        "dn-q1" => {
            let (b1, b2) = q1_curves(r0);
            let q = dn_q1_demo(&b1, &b2, grid)?;
            r.push(Check::at_least("min_sine_positive", q.min_sine, f64::MIN_POSITIVE));
            r.push(Check::at_least("rank_two", q.min_abs_det, 1e-12));
            r.note("swapped", q.swapped);
            r.note("min_sine", q.min_sine);
            Some(q.patch)
        }
        _ => {
            let known: Vec<&str> = SCENARIOS.iter().map(|s| s.0).collect();
            return Err(Error::Spec(format!("unknown scenario `{name}`; known: {}", known.join(", "))));
        }
    };
    if let Some(p) = &patch {
        if opts.verify {
            let v = verify_patch(p, &opts.tol)?;
            if name != "dn-q2" && name != "hopf-cylinder" {
                let c = v.info.get("completeness").and_then(|c| c.get("verdict")).and_then(|c| c.as_str()) == Some("certified");
                r.push(Check::flag("completeness_certified", c));
            }
            r.extend(v);
        }
    }
    Ok(ScenarioOutcome { name: name.to_string(), patch, report: r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fiber_angles() {
        assert_eq!(fiber_angle(&HopfAxis::i()).unwrap(), PI);
        let a = HopfAxis::new(SplitQuat::imag(1.0, 0.0, 1.0)).unwrap();
        assert!((fiber_angle(&a).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!(fiber_angle(&HopfAxis::new(SplitQuat::imag(1.0, 0.5, 0.0)).unwrap()).is_err());
    }

    #[test]
    fn dictionary_classes() {
        for axis in dictionary_axes().unwrap() {
            let fc = fiber_curvature(&axis).unwrap();
            assert!(fc.class_matches, "{fc:?}");
            assert!(fc.direction_residual < 1e-12);
        }
        let fc = fiber_curvature(&HopfAxis::i()).unwrap();
        assert!(fc.class_matches && fc.curvature.abs() > 1e12);
    }

    #[test]
    fn q2_lengths_are_ordered() {
        let l3 = q2_diagonal_length(0.99, 1e3);
        let l4 = q2_diagonal_length(0.99, 1e4);
        assert!(l3 < l4 && l4 - l3 < 1e-2);
        let a = q2_axis_integral(0.99, 1e3);
        assert!((a - 0.99f64.sqrt() * 1e3f64.asinh()).abs() < 1e-9);
    }

    #[test]
    fn unknown_scenario() {
        assert!(matches!(run_scenario("nope", &ScenarioOptions::default()), Err(Error::Spec(_))));
    }
}
