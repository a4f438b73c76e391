//! Asymptotic curves in H³₁: lifts of fronts through the double cover and
//! asymptotic reparametrization of curves with `⟨c', c·j⟩ = 0`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::cliffalg::{classify_sign, inner, AdSPoint, CausalClass, SplitQuat};
use crate::error::{Error, Result};
use crate::fronts::{angle_function, fix_branch, FrontCurve};
use crate::hopf::{double_cover, lift_point};
use crate::sampling::{cubic_interp, hermite, unwrap_angles, UniformAxis};

/// Projection residual accepted for a lift, relative to `max(1, ‖γ‖)`.
pub const LIFT_TOL: f64 = 1e-6;
/// Endpoint residual below which a curve counts as closed.
pub const CLOSED_TOL: f64 = 1e-6;
const MAX_HALVINGS: u32 = 3;

/// Gap `||k| − 1|` below which a lift counts as lightlike.
pub const LIGHTLIKE_TOL: f64 = 1e-9;

/// Causal character of `a'` from the curvature `k = cot ω` of the underlying
/// front: timelike iff `|k| > 1`, lightlike within [`LIGHTLIKE_TOL`] of `|k| = 1`.
pub fn causal_class_of_angle(omega: f64) -> CausalClass {
    let (s, c) = omega.sin_cos();
    if s == 0.0 {
        return CausalClass::Timelike;
    }
    classify_sign(1.0 - (c / s).abs(), LIGHTLIKE_TOL)
}

/// `cos ω·i + sin ω·k`.
pub fn xi(omega: f64) -> SplitQuat {
    SplitQuat::imag(omega.cos(), 0.0, omega.sin())
}

fn renormalize(q: SplitQuat) -> SplitQuat {
    q / (q * q.conj()).re.sqrt()
}

/// A regular curve in H³₁ sampled on a uniform grid, with derivatives.
pub trait CurveSource {
    fn domain(&self) -> (f64, f64);
    /// `(c(s), c'(s))`.
    fn eval(&self, s: f64) -> Result<(SplitQuat, SplitQuat)>;
}

/// A curve given in closed form.
pub struct FnCurve<F> {
    pub domain: (f64, f64),
    pub f: F,
}

impl<F: Fn(f64) -> (SplitQuat, SplitQuat)> CurveSource for FnCurve<F> {
    fn domain(&self) -> (f64, f64) {
        self.domain
    }

    fn eval(&self, s: f64) -> Result<(SplitQuat, SplitQuat)> {
        let (a, b) = self.domain;
        if s < a - 1e-12 || s > b + 1e-12 {
            return Err(Error::OutOfDomain { at: s, start: a, end: b });
        }
        Ok((self.f)(s))
    }
}

/// `s ↦ conj(c(s))`.
pub struct Conjugate<'a>(pub &'a dyn CurveSource);

impl CurveSource for Conjugate<'_> {
    fn domain(&self) -> (f64, f64) {
        self.0.domain()
    }

    fn eval(&self, s: f64) -> Result<(SplitQuat, SplitQuat)> {
        let (c, d) = self.0.eval(s)?;
        Ok((c.conj(), d.conj()))
    }
}

/// Uniform samples of a curve and its derivative, Hermite-interpolated.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve {
    pub axis: UniformAxis,
    pub points: Vec<SplitQuat>,
    pub derivs: Vec<SplitQuat>,
}

impl CurveSource for SampledCurve {
    fn domain(&self) -> (f64, f64) {
        (self.axis.start, self.axis.end())
    }

    fn eval(&self, s: f64) -> Result<(SplitQuat, SplitQuat)> {
        if let Some(n) = self.axis.node_of(s) {
            return Ok((self.points[n], self.derivs[n]));
        }
        let (n, t) = self.axis.locate(s)?;
        let (p, d) = hermite(self.points[n], self.derivs[n], self.points[n + 1], self.derivs[n + 1], self.axis.step, t);
        let r = renormalize(p);
        Ok((r, d))
    }
}

/// Integrate `c' = c·ξ(s)` on `axis` from `c(0) = c0`, one classical
/// fourth-order step per `substeps`-th of a cell, renormalizing onto the quadric.
pub fn integrate_left_invariant(
    xi_of: &dyn Fn(f64) -> SplitQuat,
    c0: AdSPoint,
    axis: UniformAxis,
    substeps: u32,
) -> Result<SampledCurve> {
    let origin = axis
        .node_of(0.0)
        .ok_or_else(|| Error::InvalidGrid("curve axis must contain 0 as a node".into()))?;
    let m = substeps.max(1);
    let step = |a: SplitQuat, s: f64, h: f64| -> SplitQuat {
        let x1 = xi_of(s);
        let x2 = xi_of(s + 0.5 * h);
        let x4 = xi_of(s + h);
        let k1 = a * x1;
        let k2 = (a + k1 * (0.5 * h)) * x2;
        let k3 = (a + k2 * (0.5 * h)) * x2;
        let k4 = (a + k3 * h) * x4;
        renormalize(a + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0))
    };
    let mut points = vec![c0.q(); axis.len];
    let sub = axis.step / m as f64;
    for n in origin..axis.len - 1 {
        let mut a = points[n];
        for j in 0..m {
            a = step(a, axis.at(n) + j as f64 * sub, sub);
        }
        points[n + 1] = a;
    }
    for n in (1..=origin).rev() {
        let mut a = points[n];
        for j in 0..m {
            a = step(a, axis.at(n) - j as f64 * sub, -sub);
        }
        points[n - 1] = a;
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::Integration("left-invariant integration diverged".into()));
    }
    let derivs = points.iter().zip(axis.nodes()).map(|(a, s)| *a * xi_of(s)).collect();
    Ok(SampledCurve { axis, points, derivs })
}

/// Regular curve in H³₁ in its asymptotic parameter, with its angle function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticCurve {
    axis: UniformAxis,
    points: Vec<SplitQuat>,
    omega: Vec<f64>,
    period: Option<f64>,
}

impl AsymptoticCurve {
    /// Assemble from raw samples; points are renormalized onto the quadric.
    pub fn from_samples(axis: UniformAxis, points: Vec<SplitQuat>, omega: Vec<f64>, period: Option<f64>) -> Result<Self> {
        if points.len() != axis.len || omega.len() != axis.len {
            return Err(Error::InvalidGrid("sample count does not match the axis".into()));
        }
        let points = points.into_iter().map(|p| AdSPoint::new(p).map(AdSPoint::q)).collect::<Result<Vec<_>>>()?;
        Ok(AsymptoticCurve { axis, points, omega, period })
    }

    pub fn axis(&self) -> &UniformAxis {
        &self.axis
    }

    pub fn points(&self) -> &[SplitQuat] {
        &self.points
    }

    pub fn omega_samples(&self) -> &[f64] {
        &self.omega
    }

    pub fn period(&self) -> Option<f64> {
        self.period
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.axis.start, self.axis.end())
    }

    pub fn omega(&self, u: f64) -> Result<f64> {
        if let Some(n) = self.axis.node_of(u) {
            return Ok(self.omega[n]);
        }
        cubic_interp(&self.axis, &self.omega, u)
    }

    pub fn point(&self, u: f64) -> Result<AdSPoint> {
        Ok(AdSPoint::from_unit(self.eval(u)?.0))
    }

    /// `a'(u) = a(u)·ξ(ω(u))`.
    pub fn derivative(&self, u: f64) -> Result<SplitQuat> {
        Ok(self.eval(u)?.1)
    }

    /// `⟨a', a'⟩ = −cos 2ω` at every node.
    pub fn speed_sq(&self) -> Vec<f64> {
        self.omega.iter().map(|w| -(2.0 * w).cos()).collect()
    }

    /// Right-multiply every point by a unit element (`a ↦ a·r`).
    pub fn right_mul(&self, r: SplitQuat, omega_shift: f64) -> Result<AsymptoticCurve> {
        let points = self.points.iter().map(|a| *a * r).collect();
        let omega = self.omega.iter().map(|w| w + omega_shift).collect();
        AsymptoticCurve::from_samples(self.axis, points, omega, self.period)
    }
}

impl CurveSource for AsymptoticCurve {
    fn domain(&self) -> (f64, f64) {
        (self.axis.start, self.axis.end())
    }

    fn eval(&self, u: f64) -> Result<(SplitQuat, SplitQuat)> {
        if let Some(n) = self.axis.node_of(u) {
            let a = self.points[n];
            return Ok((a, a * xi(self.omega[n])));
        }
        let (n, t) = self.axis.locate(u)?;
        let (a0, a1) = (self.points[n], self.points[n + 1]);
        let d0 = a0 * xi(self.omega[n]);
        let d1 = a1 * xi(self.omega[n + 1]);
        let (p, _) = hermite(a0, d0, a1, d1, self.axis.step, t);
        let a = renormalize(p);
        Ok((a, a * xi(self.omega(u)?)))
    }
}

/// Representative of `±a` whose largest-magnitude coordinate is positive.
fn canonical_sign(a: AdSPoint) -> AdSPoint {
    let c = a.q().to_array();
    let big = c.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    if big < 0.0 {
        a.neg()
    } else {
        a
    }
}

/// Lift a Sasaki-parametrized front to H³₁ through the double cover,
/// starting from `sign·a₀` where `a₀` lies over the front's base point
/// (`a₀ = 1` when the base point is `(i, k)`).
pub fn asymptotic_lift(front: &FrontCurve, sign: i8) -> Result<AsymptoticCurve> {
    if sign != 1 && sign != -1 {
        return Err(Error::Hypothesis(format!("sign must be ±1, got {sign}")));
    }
    let sasaki = front.sasaki_speed_sq().iter().map(|x| (x - 4.0).abs()).fold(0.0, f64::max);
    if sasaki > 1e-6 {
        return Err(Error::Hypothesis(format!("front is not Sasaki-parametrized (speed defect {sasaki:e})")));
    }
    let af = angle_function(front)?;
    let axis = *front.axis();
    let origin = axis.node_of(0.0).ok_or_else(|| Error::InvalidGrid("front axis must contain 0".into()))?;
    let a0 = canonical_sign(lift_point(&front.frames()[origin].legendrian())?);
    let a0 = if sign < 0 { a0.neg() } else { a0 };
    let (lo, hi) = (axis.start, axis.end());
    let xi_of = |u: f64| xi(af.at(u.clamp(lo, hi)).expect("clamped"));
    let mut last_residual = f64::INFINITY;
    for halvings in 0..=MAX_HALVINGS {
        let sampled = integrate_left_invariant(&xi_of, a0, axis, 1 << halvings)?;
        let residual = sampled
            .points
            .iter()
            .zip(front.frames())
            .map(|(a, f)| {
                let lp = double_cover(AdSPoint::from_unit(*a));
                let d = (lp.gamma - f.gamma).max_abs().max((lp.nu - f.nu).max_abs());
                d / f.gamma.euclid_norm().max(1.0)
            })
            .fold(0.0, f64::max);
        if residual <= LIFT_TOL {
            return Ok(AsymptoticCurve { axis, points: sampled.points, omega: af.omega, period: front.period() });
        }
        last_residual = residual;
    }
    Err(Error::Integration(format!("lift does not project onto the front (residual {last_residual:e})")))
}

/// Fix the 2kπ ambiguity of an unwrapped angle sequence: the front branch
/// rule when the image misses a projective value, `ω(0) ∈ (−π, π]` otherwise.
fn branch_angles(omega: &mut [f64], origin: usize) {
    let sing = (0..omega.len())
        .filter(|&n| {
            omega[n].sin().abs() <= 5e-7 || (n + 1 < omega.len() && omega[n].sin() * omega[n + 1].sin() < 0.0)
        })
        .min_by(|&a, &b| omega[a].sin().abs().total_cmp(&omega[b].sin().abs()));
    if fix_branch(omega, sing).is_err() {
        let w0 = omega[origin];
        let shift = -2.0 * PI * ((w0 + PI) / (2.0 * PI)).ceil() + 2.0 * PI;
        omega.iter_mut().for_each(|w| *w += shift);
    }
}

/// Result of [`asymptotic_reparametrize`]: the curve in its asymptotic
/// parameter `u` and the original parameter `s(u)` at every node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Reparametrized {
    pub curve: AsymptoticCurve,
    pub s_of_u: Vec<f64>,
}

/// Tolerance on `⟨c', c·j⟩`, relative to `|c'|`.
pub const COMPAT_TOL: f64 = 1e-8;

/// Reparametrize a curve with `⟨c', c·j⟩ = 0` so that `conj(c)·c' = cos ω i + sin ω k`.
/// The new parameter vanishes where `s` does.
pub fn asymptotic_reparametrize(c: &dyn CurveSource, step: f64) -> Result<Reparametrized> {
    let (start, end) = c.domain();
    if !(start <= 0.0 && end > 0.0 || start < 0.0 && end >= 0.0) {
        return Err(Error::InvalidGrid("curve domain must contain 0".into()));
    }
    // hypothesis scan on a grid of the input parameter
    let scan = UniformAxis::covering(start.max(-1e9), end, step)?;
    for s in scan.nodes().filter(|s| *s >= start && *s <= end) {
        let (p, d) = c.eval(s)?;
        let scale = d.euclid_norm().max(1.0);
        let r = inner(d, p * SplitQuat::J);
        if r.abs() > COMPAT_TOL * scale {
            return Err(Error::NotAsymptoticCompatible { residual: r, at: s });
        }
        let x = p.conj() * d;
        if x.i_c.hypot(x.k_c) <= 1e-10 {
            return Err(Error::Singular { at: s });
        }
    }
    let rate = |s: f64| -> f64 {
        let (p, d) = c.eval(s.clamp(start, end)).expect("clamped");
        let x = p.conj() * d;
        1.0 / x.i_c.hypot(x.k_c)
    };
    let integrate = |dir: f64| -> Vec<f64> {
        let mut out = vec![0.0];
        let mut s = 0.0;
        loop {
            let k1 = rate(s);
            let k2 = rate(s + 0.5 * dir * step * k1);
            let k3 = rate(s + 0.5 * dir * step * k2);
            let k4 = rate(s + dir * step * k3);
            let next = s + dir * step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
            if next > end + 1e-9 * step || next < start - 1e-9 * step {
                break;
            }
            out.push(next);
            s = next;
        }
        out
    };
    let fwd = integrate(1.0);
    let back = integrate(-1.0);
    let mut s_of_u: Vec<f64> = back.iter().skip(1).rev().copied().collect();
    s_of_u.extend(fwd.iter().copied());
    let origin = back.len() - 1;
    let axis = UniformAxis::new(-(origin as f64) * step, step, s_of_u.len())?;
    let mut points = Vec::with_capacity(axis.len);
    let mut omega = Vec::with_capacity(axis.len);
    for &s in &s_of_u {
        let (p, d) = c.eval(s.clamp(start, end))?;
        let x = p.conj() * d;
        points.push(p);
        omega.push(x.k_c.atan2(x.i_c));
    }
    unwrap_angles(&mut omega);
    branch_angles(&mut omega, origin);
    let curve = AsymptoticCurve::from_samples(axis, points, omega, None)?;
    Ok(Reparametrized { curve, s_of_u })
}

/// Angle function recomputed from the points alone (fourth-order differences).
pub fn angle_of(c: &AsymptoticCurve) -> Vec<crate::fronts::AngleSample> {
    let a = &c.points;
    let n = a.len();
    let h = c.axis.step;
    let deriv = |i: usize| -> SplitQuat {
        if i >= 2 && i + 2 < n {
            (a[i - 2] - a[i - 1] * 8.0 + a[i + 1] * 8.0 - a[i + 2]) / (12.0 * h)
        } else if i + 4 < n {
            (a[i] * -25.0 + a[i + 1] * 48.0 - a[i + 2] * 36.0 + a[i + 3] * 16.0 - a[i + 4] * 3.0) / (12.0 * h)
        } else {
            (a[i] * 25.0 - a[i - 1] * 48.0 + a[i - 2] * 36.0 - a[i - 3] * 16.0 + a[i - 4] * 3.0) / (12.0 * h)
        }
    };
    let mut omega: Vec<f64> = (0..n)
        .map(|i| {
            let x = a[i].conj() * deriv(i);
            x.k_c.atan2(x.i_c)
        })
        .collect();
    unwrap_angles(&mut omega);
    let origin = c.axis.nearest(0.0);
    branch_angles(&mut omega, origin);
    c.axis.nodes().zip(omega).map(|(s, omega)| crate::fronts::AngleSample { s, omega }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosureRecord {
    pub period: f64,
    pub epsilon: i8,
    pub residual: f64,
    pub closed: bool,
}

/// Compare `a(u + L)` with `±a(u)` over every node where both are sampled.
pub fn closure_detect(c: &AsymptoticCurve, l: f64) -> ClosureRecord {
    let (_, end) = c.domain();
    let mut res = [0.0f64; 2];
    let mut any = false;
    for (n, u) in c.axis.nodes().enumerate() {
        if u + l > end + 1e-12 {
            break;
        }
        let Ok((shifted, _)) = c.eval(u + l) else { continue };
        any = true;
        let a = c.points[n];
        res[0] = res[0].max((shifted - a).max_abs());
        res[1] = res[1].max((shifted + a).max_abs());
    }
    if !any {
        return ClosureRecord { period: l, epsilon: 1, residual: f64::INFINITY, closed: false };
    }
    let (epsilon, residual) = if res[0] <= res[1] { (1, res[0]) } else { (-1, res[1]) };
    ClosureRecord { period: l, epsilon, residual, closed: residual <= CLOSED_TOL }
}

/// Resample a non-lightlike asymptotic curve by proper arc length `s`
/// (`|⟨c', c'⟩| = 1`), with `s = 0` at `u = 0`.
pub fn arc_length_resample(c: &AsymptoticCurve, step: f64) -> Result<SampledCurve> {
    let speeds = c.speed_sq();
    let sign = speeds[c.axis.nearest(0.0)].signum();
    if speeds.iter().any(|x| x * sign <= 1e-12) {
        return Err(Error::Hypothesis("curve changes causal character or is lightlike".into()));
    }
    let (lo, hi) = c.domain();
    let rate = |u: f64| -> f64 {
        let w = c.omega(u.clamp(lo, hi)).expect("clamped");
        1.0 / (2.0 * w).cos().abs().sqrt()
    };
    let integrate = |dir: f64| -> Vec<f64> {
        let mut out = vec![0.0];
        let mut u = 0.0;
        loop {
            let k1 = rate(u);
            let k2 = rate(u + 0.5 * dir * step * k1);
            let k3 = rate(u + 0.5 * dir * step * k2);
            let k4 = rate(u + dir * step * k3);
            let next = u + dir * step * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
            if next > hi + 1e-9 * step || next < lo - 1e-9 * step {
                break;
            }
            out.push(next);
            u = next;
        }
        out
    };
    let fwd = integrate(1.0);
    let back = integrate(-1.0);
    let mut u_of_s: Vec<f64> = back.iter().skip(1).rev().copied().collect();
    u_of_s.extend(fwd.iter().copied());
    let axis = UniformAxis::new(-((back.len() - 1) as f64) * step, step, u_of_s.len())?;
    let mut points = Vec::with_capacity(axis.len);
    let mut derivs = Vec::with_capacity(axis.len);
    for &u in &u_of_s {
        let u = u.clamp(lo, hi);
        let (a, d) = c.eval(u)?;
        points.push(a);
        derivs.push(d * rate(u));
    }
    Ok(SampledCurve { axis, points, derivs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffalg::exp_fiber;
    use crate::fronts::{acot, constant_curvature_front, make_front_from_curvature, negate_normal, prepare};
    use approx::assert_abs_diff_eq;

    #[test]
    fn geodesic_lift_is_k_fiber() {
        let f = make_front_from_curvature(&|_| PI / 2.0, -2.0, 2.0, 1e-3, None).unwrap();
        let a = asymptotic_lift(&f, 1).unwrap();
        for u in [-1.7, 0.0, 0.9, 2.0] {
            let e = exp_fiber(SplitQuat::K, u).unwrap();
            assert!((a.point(u).unwrap().q() - e).max_abs() < 1e-10);
        }
        let m = asymptotic_lift(&f, -1).unwrap();
        assert!((m.points()[0] + a.points()[0]).max_abs() < 1e-15);
    }

    #[test]
    fn constant_angle_lift() {
        let w0 = acot(2.0);
        let f = constant_curvature_front(2.0, -1.0, 4.0, 1e-3).unwrap();
        let a = asymptotic_lift(&f, 1).unwrap();
        let rho = xi(w0);
        for u in [-0.8, 0.5, 3.3] {
            let e = exp_fiber(rho / 0.6f64.sqrt(), 0.6f64.sqrt() * u).unwrap();
            assert!((a.point(u).unwrap().q() - e).max_abs() < 1e-9);
        }
        let rec = closure_detect(&a, f.period().unwrap());
        assert!(rec.closed);
        assert_eq!(rec.epsilon, -1);
    }

    #[test]
    fn negated_normal_lifts_to_right_multiple_by_i() {
        let w = |s: f64| PI / 2.0 + 0.3 * s.sin();
        let f = make_front_from_curvature(&w, -2.0, 2.0, 1e-3, None).unwrap();
        let a = asymptotic_lift(&f, 1).unwrap();
        let b = asymptotic_lift(&negate_normal(&f), 1).unwrap();
        for (x, y) in a.points().iter().zip(b.points()).step_by(37) {
            assert!((*x * SplitQuat::I - *y).max_abs() < 1e-6);
        }
    }

    #[test]
    fn fiber_reparametrization() {
        let w0 = 0.7f64;
        let rho = xi(w0) * 2.0;
        let norm = rho.norm_sq();
        let c = FnCurve {
            domain: (-1.0, 1.0),
            f: move |t: f64| {
                let p = crate::cliffalg::exp_imag(rho, t);
                (p, p * rho)
            },
        };
        assert!(norm < 0.0);
        let r = asymptotic_reparametrize(&c, 1e-3).unwrap();
        for (n, s) in r.s_of_u.iter().enumerate().step_by(101) {
            assert_abs_diff_eq!(2.0 * *s, r.curve.axis().at(n), epsilon = 1e-10);
        }
        assert!(r.curve.omega_samples().iter().all(|w| (w - w0).abs() < 1e-12));
    }

    #[test]
    fn reparametrize_rejects_j_direction() {
        let c = FnCurve {
            domain: (-1.0, 1.0),
            f: |t: f64| {
                let p = exp_fiber(SplitQuat::J, t).unwrap();
                (p, p * SplitQuat::J)
            },
        };
        assert!(matches!(asymptotic_reparametrize(&c, 1e-3), Err(Error::NotAsymptoticCompatible { .. })));
    }

    #[test]
    fn angle_of_round_trip() {
        let w = |s: f64| 1.0 + 0.4 * s.cos();
        let f = prepare(&make_front_from_curvature(&w, -2.0, 2.0, 1e-3, None).unwrap()).unwrap();
        let a = asymptotic_lift(&f, 1).unwrap();
        for s in angle_of(&a).iter().step_by(53) {
            assert_abs_diff_eq!(s.omega, w(s.s), epsilon = 1e-8);
        }
    }

    #[test]
    fn open_curve_verdict() {
        let w = |s: f64| PI / 2.0 + 0.3 * s.sin();
        let f = make_front_from_curvature(&w, -1.0, 5.0, 1e-3, None).unwrap();
        let a = asymptotic_lift(&f, 1).unwrap();
        assert!(!closure_detect(&a, 3.0).closed);
        assert!(!closure_detect(&a, 50.0).closed);
    }
}
