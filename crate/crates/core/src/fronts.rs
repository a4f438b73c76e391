//! Wave fronts in H² carried by an orthonormal frame `(γ, t, ν)` with
//! `t = ν·γ`, and the projective geodesic curvature encoded as an angle.
//!
//! A front is stored through its frame equations
//!
//! ```text
//! γ' = p·t,   ν' = q·t,   t' = p·γ − q·ν
//! ```
//!
//! so `‖γ'‖ = |p|`, the Sasaki speed is `√(p² + q²)` and the curvature angle
//! satisfies `(cos ω, sin ω) ∝ (−q, p)`.
//!
//! The frame is carried by a group element `a` with `(γ, t, ν) = (a i ā, a j ā, a k ā)`
//! and `ā a' = −(q/2) i + (p/2) k`; integrating `a` instead of the frame keeps the
//! frame exactly orthonormal where `γ` has large coordinates.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::cliffalg::{inner, SplitQuat};
use crate::error::{Error, Result};
use crate::hopf::{lift_point, LegendrianPoint};
use crate::sampling::{adaptive_simpson, cubic_interp, unwrap_angles, UniformAxis};

/// Default sampling step of fronts and lifts.
pub const DEFAULT_STEP: f64 = 1e-3;
/// `‖γ'‖` at or below this counts as a singular point.
pub const SINGULAR_TOL: f64 = 1e-6;
/// Largest frame defect accepted when a front is declared closed.
pub const CLOSURE_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub gamma: SplitQuat,
    pub t: SplitQuat,
    pub nu: SplitQuat,
}

impl Frame {
    /// `(i, j, k)`: the front through `i` with normal `k`.
    pub const BASE: Frame = Frame { gamma: SplitQuat::I, t: SplitQuat::J, nu: SplitQuat::K };

    pub fn legendrian(&self) -> LegendrianPoint {
        LegendrianPoint { gamma: self.gamma, nu: self.nu }
    }

    /// Project back onto `⟨γ,γ⟩ = −1, ⟨ν,ν⟩ = 1, ⟨γ,ν⟩ = 0, t = νγ`.
    pub fn orthonormalize(self) -> Frame {
        let g = self.gamma.imag_part();
        let g = g / (-g.norm_sq()).sqrt();
        let n = self.nu.imag_part();
        let n = n + g * inner(n, g);
        let n = n / n.norm_sq().sqrt();
        Frame { gamma: g, t: (n * g).imag_part(), nu: n }
    }

    /// `x ↦ b̄·x·b` applied to every member.
    pub fn conjugated(self, b: SplitQuat) -> Frame {
        let bc = b.conj();
        Frame { gamma: bc * self.gamma * b, t: bc * self.t * b, nu: bc * self.nu * b }
    }

    pub fn distance(&self, other: &Frame) -> f64 {
        (self.gamma - other.gamma).max_abs().max((self.nu - other.nu).max_abs()).max((self.t - other.t).max_abs())
    }

    /// Largest violation of the frame relations.
    pub fn residual(&self) -> f64 {
        let lp = self.legendrian().residual();
        lp.max((self.t - self.nu * self.gamma).max_abs())
    }
}

/// `ζ = (−q/2)·i + (p/2)·k`: the left-invariant generator of the frame motion.
fn zeta(p: f64, q: f64) -> SplitQuat {
    SplitQuat::imag(-0.5 * q, 0.0, 0.5 * p)
}

fn renormalize(a: SplitQuat) -> SplitQuat {
    a / (a * a.conj()).re.sqrt()
}

/// The frame `(a i ā, a j ā, a k ā)`.
pub fn frame_of(a: SplitQuat) -> Frame {
    let ac = a.conj();
    Frame {
        gamma: (a * SplitQuat::I * ac).imag_part(),
        t: (a * SplitQuat::J * ac).imag_part(),
        nu: (a * SplitQuat::K * ac).imag_part(),
    }
}

fn rk4_group(a: SplitQuat, s: f64, h: f64, pq: &dyn Fn(f64) -> (f64, f64)) -> SplitQuat {
    let z = |x: f64| {
        let (p, q) = pq(x);
        zeta(p, q)
    };
    let z1 = z(s);
    let z2 = z(s + 0.5 * h);
    let z4 = z(s + h);
    let k1 = a * z1;
    let k2 = (a + k1 * (0.5 * h)) * z2;
    let k3 = (a + k2 * (0.5 * h)) * z2;
    let k4 = (a + k3 * h) * z4;
    renormalize(a + (k1 + (k2 + k3) * 2.0 + k4) * (h / 6.0))
}

/// Projective geodesic curvature: the angle representative `(cos ω, sin ω)`
/// and `k = cot ω` when finite.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectiveCurvature {
    pub cos: f64,
    pub sin: f64,
    pub k: Option<f64>,
}

impl ProjectiveCurvature {
    fn from_pq(p: f64, q: f64) -> Self {
        if p.abs() <= SINGULAR_TOL {
            let cos = if q > 0.0 { -1.0 } else { 1.0 };
            return ProjectiveCurvature { cos, sin: 0.0, k: None };
        }
        let r = p.hypot(q);
        ProjectiveCurvature { cos: -q / r, sin: p / r, k: Some(-q / p) }
    }

    pub fn is_infinite(&self) -> bool {
        self.k.is_none()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleSample {
    pub s: f64,
    pub omega: f64,
}

/// Continuous angle function of a front on the front's own sample grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AngleFunction {
    pub axis: UniformAxis,
    pub omega: Vec<f64>,
    pub singular: bool,
    /// Set when every singular point has `cos ω = −1`, or the front is regular with `sin ω > 0`.
    pub positive: bool,
    /// The constant `c` with `ω ∈ (π − c, 2π − c)`, for singular positive fronts.
    pub branch_c: Option<f64>,
}

impl AngleFunction {
    pub fn at(&self, s: f64) -> Result<f64> {
        cubic_interp(&self.axis, &self.omega, s)
    }

    pub fn samples(&self) -> Vec<AngleSample> {
        self.axis.nodes().zip(&self.omega).map(|(s, &omega)| AngleSample { s, omega }).collect()
    }

    pub fn range(&self) -> (f64, f64) {
        min_max(&self.omega)
    }
}

pub(crate) fn min_max(v: &[f64]) -> (f64, f64) {
    v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

pub(crate) struct Branch {
    pub positive: bool,
    pub branch_c: Option<f64>,
}

/// Shift an unwrapped angle sequence by a multiple of 2π according to the
/// branch rule: regular angles centered in `[0, 2π)`, singular angles with
/// the singular value moved to π (positive) or 0.
///
/// `singular_at` is the index of a sample sitting on a singular point.
pub(crate) fn fix_branch(omega: &mut [f64], singular_at: Option<usize>) -> Result<Branch> {
    let (lo, hi) = min_max(omega);
    if hi - lo >= PI - 1e-12 {
        return Err(Error::BranchFailure);
    }
    let mid = 0.5 * (lo + hi);
    match singular_at {
        None => {
            let shift = -TAU * (mid / TAU).floor();
            omega.iter_mut().for_each(|w| *w += shift);
            let positive = omega.iter().all(|w| w.sin() > 0.0);
            Ok(Branch { positive, branch_c: None })
        }
        Some(n) => {
            let m = (omega[n] / PI).round();
            let odd = (m as i64).rem_euclid(2) == 1;
            let target = if odd { PI } else { 0.0 };
            let shift = target - m * PI;
            omega.iter_mut().for_each(|w| *w += shift);
            let branch_c = odd.then_some(1.5 * PI - (mid + shift));
            Ok(Branch { positive: odd, branch_c })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontCurve {
    axis: UniformAxis,
    /// Group elements carrying the frame: `frames[n] = frame_of(lifts[n])`.
    lifts: Vec<SplitQuat>,
    frames: Vec<Frame>,
    p: Vec<f64>,
    q: Vec<f64>,
    period: Option<f64>,
}

impl FrontCurve {
    /// Integrate the frame equations from `frame0` at `s = 0` over an axis
    /// through 0, with `(p, q)` given as functions of `s`.
    pub fn from_frame_ode(
        pq: &dyn Fn(f64) -> (f64, f64),
        axis: UniformAxis,
        frame0: Frame,
        period: Option<f64>,
    ) -> Result<Self> {
        let origin = axis
            .node_of(0.0)
            .ok_or_else(|| Error::InvalidGrid("front axis must contain s = 0 as a node".into()))?;
        if frame0.residual() > 1e-8 {
            return Err(Error::InvalidFront(format!("initial frame residual {:e}", frame0.residual())));
        }
        let h = axis.step;
        let mut lifts = vec![lift_point(&frame0.legendrian())?.q(); axis.len];
        for n in origin..axis.len - 1 {
            lifts[n + 1] = rk4_group(lifts[n], axis.at(n), h, pq);
        }
        for n in (1..=origin).rev() {
            lifts[n - 1] = rk4_group(lifts[n], axis.at(n), -h, pq);
        }
        if lifts.iter().any(|a| !a.is_finite()) {
            return Err(Error::Integration("frame integration produced non-finite values".into()));
        }
        let frames = lifts.iter().map(|a| frame_of(*a)).collect();
        let (p, q): (Vec<f64>, Vec<f64>) = axis.nodes().map(pq).unzip();
        if p.iter().zip(&q).any(|(a, b)| a.hypot(*b) <= 1e-8) {
            return Err(Error::InvalidFront("Sasaki speed vanishes; the Legendrian lift is not immersed".into()));
        }
        let front = FrontCurve { axis, lifts, frames, p, q, period: None };
        match period {
            None => Ok(front),
            Some(l) => front.with_period(l),
        }
    }

    /// Declare the front closed with period `l`, checking the frame and the
    /// curvature data close up.
    pub fn with_period(mut self, l: f64) -> Result<Self> {
        if !(l > 0.0) {
            return Err(Error::InvalidFront(format!("period must be positive, got {l}")));
        }
        let f0 = self.frame_at(0.0)?;
        let fl = self.frame_at(l)?;
        let (p0, q0) = self.pq_at(0.0)?;
        let (pl, ql) = self.pq_at(l)?;
        let defect = f0.distance(&fl).max((p0 - pl).abs()).max((q0 - ql).abs());
        if defect > CLOSURE_TOL {
            return Err(Error::NotClosable { defect });
        }
        self.period = Some(l);
        Ok(self)
    }

    pub fn axis(&self) -> &UniformAxis {
        &self.axis
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn period(&self) -> Option<f64> {
        self.period
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.axis.start, self.axis.end())
    }

    pub fn pq_at(&self, s: f64) -> Result<(f64, f64)> {
        if let Some(n) = self.axis.node_of(s) {
            return Ok((self.p[n], self.q[n]));
        }
        Ok((cubic_interp(&self.axis, &self.p, s)?, cubic_interp(&self.axis, &self.q, s)?))
    }

    /// Group element carrying the frame at `s`: one integrator step from the nearest node.
    pub fn lift_at(&self, s: f64) -> Result<SplitQuat> {
        if !self.axis.contains(s) {
            return Err(Error::OutOfDomain { at: s, start: self.axis.start, end: self.axis.end() });
        }
        let n = self.axis.nearest(s);
        let s0 = self.axis.at(n);
        if (s - s0).abs() <= 1e-12 * self.axis.step {
            return Ok(self.lifts[n]);
        }
        let pq = |x: f64| {
            let x = x.clamp(self.axis.start, self.axis.end());
            self.pq_at(x).expect("clamped into the domain")
        };
        Ok(rk4_group(self.lifts[n], s0, s - s0, &pq))
    }

    /// Frame at an arbitrary parameter.
    pub fn frame_at(&self, s: f64) -> Result<Frame> {
        if let Some(n) = self.axis.node_of(s) {
            return Ok(self.frames[n]);
        }
        Ok(frame_of(self.lift_at(s)?))
    }

    pub fn gamma(&self, s: f64) -> Result<SplitQuat> {
        Ok(self.frame_at(s)?.gamma)
    }

    pub fn nu(&self, s: f64) -> Result<SplitQuat> {
        Ok(self.frame_at(s)?.nu)
    }

    /// `⟨γ',γ'⟩ + ⟨ν',ν'⟩` at every node.
    pub fn sasaki_speed_sq(&self) -> Vec<f64> {
        self.p.iter().zip(&self.q).map(|(p, q)| p * p + q * q).collect()
    }

    /// Parameters where `γ' = 0`: nodes below the singular threshold and
    /// sign changes of `p` located by linear interpolation.
    pub fn singular_parameters(&self) -> Vec<f64> {
        let mut out = Vec::new();
        for n in 0..self.axis.len {
            if self.p[n].abs() <= SINGULAR_TOL {
                out.push(self.axis.at(n));
            } else if n + 1 < self.axis.len && self.p[n + 1].abs() > SINGULAR_TOL && self.p[n] * self.p[n + 1] < 0.0 {
                let t = self.p[n] / (self.p[n] - self.p[n + 1]);
                out.push(self.axis.at(n) + t * self.axis.step);
            }
        }
        out
    }

    pub fn is_singular(&self) -> bool {
        !self.singular_parameters().is_empty()
    }

    /// Index of the node closest to a singular point, if any.
    fn singular_node(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for n in 0..self.axis.len {
            let near = self.p[n].abs() <= SINGULAR_TOL
                || (n + 1 < self.axis.len && self.p[n] * self.p[n + 1] < 0.0)
                || (n > 0 && self.p[n] * self.p[n - 1] < 0.0);
            if near && best.is_none_or(|b| self.p[n].abs() < self.p[b].abs()) {
                best = Some(n);
            }
        }
        best
    }

    /// Largest violation of the frame relations over all nodes.
    pub fn frame_residual(&self) -> f64 {
        self.frames.iter().map(Frame::residual).fold(0.0, f64::max)
    }

    fn with_lifts(&self, lifts: Vec<SplitQuat>, p: Vec<f64>, q: Vec<f64>, axis: UniformAxis) -> FrontCurve {
        let frames = lifts.iter().map(|a| frame_of(*a)).collect();
        FrontCurve { axis, lifts, frames, p, q, period: self.period }
    }
}

/// Geodesic circle-or-horocycle-or-equidistant with `cot ω ≡ k`, or any front
/// with prescribed angle function, in the Sasaki/2 parametrization.
///
/// `period`, when given, is verified a posteriori; the domain is extended to
/// cover `[0, period]` if needed.
pub fn make_front_from_curvature(
    omega: &dyn Fn(f64) -> f64,
    min: f64,
    max: f64,
    step: f64,
    period: Option<f64>,
) -> Result<FrontCurve> {
    let max = match period {
        Some(l) => max.max(l),
        None => max,
    };
    let axis = UniformAxis::covering(min, max, step)?;
    let pq = |s: f64| {
        let w = omega(s);
        (2.0 * w.sin(), -2.0 * w.cos())
    };
    FrontCurve::from_frame_ode(&pq, axis, Frame::BASE, period)
}

/// Constant curvature `k`; closed with its period when `|k| > 1`.
pub fn constant_curvature_front(k: f64, min: f64, max: f64, step: f64) -> Result<FrontCurve> {
    let w0 = acot(k);
    let period = circle_period(k);
    make_front_from_curvature(&move |_| w0, min, max, step, period)
}

/// `cot⁻¹` with values in `(0, π)`.
pub fn acot(k: f64) -> f64 {
    if k.is_infinite() {
        return if k > 0.0 { 0.0 } else { PI };
    }
    PI / 2.0 - k.atan()
}

/// Period of a constant-curvature front in the Sasaki/2 parameter: `π/√(cos 2ω₀)`
/// for circles (`|k| > 1`), none otherwise.
pub fn circle_period(k: f64) -> Option<f64> {
    let c = (2.0 * acot(k)).cos();
    (k.abs() > 1.0 && c > 0.0).then(|| PI / c.sqrt())
}

/// Front generated from uniformly spaced angle samples (cubic interpolation).
pub fn front_from_angle_samples(
    samples: &[AngleSample],
    step: f64,
    period: Option<f64>,
) -> Result<FrontCurve> {
    if samples.len() < 4 {
        return Err(Error::InvalidFront("need at least four angle samples".into()));
    }
    let h = samples[1].s - samples[0].s;
    if !(h > 0.0) || samples.windows(2).any(|w| ((w[1].s - w[0].s) - h).abs() > 1e-9 * h.max(1.0)) {
        return Err(Error::InvalidFront("angle samples must be uniformly spaced and increasing".into()));
    }
    let sample_axis = UniformAxis::new(samples[0].s, h, samples.len())?;
    let values: Vec<f64> = samples.iter().map(|a| a.omega).collect();
    let first = samples[0].s;
    let last = samples[samples.len() - 1].s;
    let omega = move |s: f64| cubic_interp(&sample_axis, &values, s.clamp(first, last)).expect("clamped");
    let axis_min = (first / step).ceil() * step;
    let axis_max = (last / step).floor() * step;
    if let Some(l) = period {
        if l > last + 1e-12 {
            return Err(Error::InvalidFront(format!("samples end at {last}, before the period {l}")));
        }
    }
    make_front_from_curvature(&omega, axis_min, axis_max, step, period)
}

pub fn geodesic_curvature(front: &FrontCurve, s: f64) -> Result<ProjectiveCurvature> {
    let (p, q) = front.pq_at(s)?;
    Ok(ProjectiveCurvature::from_pq(p, q))
}

/// Raw continuous angle `atan2(p, −q)` on the front's grid.
fn raw_angles(front: &FrontCurve) -> Vec<f64> {
    let mut w: Vec<f64> = front.p.iter().zip(&front.q).map(|(p, q)| p.atan2(-q)).collect();
    unwrap_angles(&mut w);
    w
}

/// Orient the front so that `sin ω > 0` (regular) or `cos ω = −1` at every
/// singular point.
///
/// Regular fronts get `ν ↦ −ν`, which sends `ω ↦ −ω`. That map fixes `cos ω`,
/// so singular fronts are instead traversed backwards, sending `ω ↦ ω + π`.
pub fn positive_normal(front: &FrontCurve) -> Result<FrontCurve> {
    let mut w = raw_angles(front);
    let sing = front.singular_node();
    let branch = fix_branch(&mut w, sing)?;
    if branch.positive {
        return Ok(front.clone());
    }
    match sing {
        None => Ok(negate_normal(front)),
        Some(_) => Ok(reverse(front)),
    }
}

/// `(γ, ν) ↦ (γ, −ν)` without any other change; the carrier becomes `a·i`.
pub fn negate_normal(front: &FrontCurve) -> FrontCurve {
    let lifts = front.lifts.iter().map(|a| *a * SplitQuat::I).collect();
    let p = front.p.iter().map(|x| -x).collect();
    front.with_lifts(lifts, p, front.q.clone(), front.axis)
}

/// `s ↦ −s`.
pub fn reverse(front: &FrontCurve) -> FrontCurve {
    let axis = UniformAxis { start: -front.axis.end(), step: front.axis.step, len: front.axis.len };
    let lifts = front.lifts.iter().rev().copied().collect();
    let p = front.p.iter().rev().map(|x| -x).collect();
    let q = front.q.iter().rev().map(|x| -x).collect();
    front.with_lifts(lifts, p, q, axis)
}

/// Apply the rigid motion taking the frame at `s = 0` to `(i, j, k)`.
pub fn normalize_base(front: &FrontCurve) -> Result<FrontCurve> {
    let b = front.lift_at(0.0)?;
    let bc = b.conj();
    let lifts = front.lifts.iter().map(|a| renormalize(bc * *a)).collect();
    Ok(front.with_lifts(lifts, front.p.clone(), front.q.clone(), front.axis))
}

/// Reparametrize by half the Sasaki arc length, so that `p² + q² ≡ 4`.
/// The new parameter vanishes where the old one did and keeps the step.
pub fn sasaki_reparametrize(front: &FrontCurve) -> Result<FrontCurve> {
    let h = front.axis.step;
    let (start, end) = front.domain();
    let speed = |s: f64| -> f64 {
        let (p, q) = front.pq_at(s.clamp(start, end)).expect("clamped");
        p.hypot(q)
    };
    let rate = |s: f64| 2.0 / speed(s);
    if front.sasaki_speed_sq().iter().any(|&x| x <= 1e-16) {
        return Err(Error::InvalidFront("Sasaki speed vanishes".into()));
    }
    // s(σ) on both sides of σ = 0
    let integrate = |dir: f64| -> Vec<f64> {
        let mut out = vec![0.0];
        let mut s = 0.0;
        loop {
            let k1 = rate(s);
            let k2 = rate(s + 0.5 * dir * h * k1);
            let k3 = rate(s + 0.5 * dir * h * k2);
            let k4 = rate(s + dir * h * k3);
            let next = s + dir * h * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
            if next > end + 1e-9 * h || next < start - 1e-9 * h {
                break;
            }
            out.push(next);
            s = next;
        }
        out
    };
    let fwd = integrate(1.0);
    let back = integrate(-1.0);
    let mut s_of: Vec<f64> = back.iter().skip(1).rev().copied().collect();
    s_of.extend(fwd.iter().copied());
    if s_of.len() < 4 {
        return Err(Error::InvalidFront("domain too short for reparametrization".into()));
    }
    let axis = UniformAxis::new(-((back.len() - 1) as f64) * h, h, s_of.len())?;
    let mut lifts = Vec::with_capacity(s_of.len());
    let mut p = Vec::with_capacity(s_of.len());
    let mut q = Vec::with_capacity(s_of.len());
    for &s in &s_of {
        let s = s.clamp(start, end);
        lifts.push(front.lift_at(s)?);
        let (ps, qs) = front.pq_at(s)?;
        let r = 2.0 / ps.hypot(qs);
        p.push(ps * r);
        q.push(qs * r);
    }
    let period = front.period.map(|l| adaptive_simpson(&|s| 0.5 * speed(s), 0.0, l, 1e-13));
    let frames = lifts.iter().map(|a| frame_of(*a)).collect();
    Ok(FrontCurve { axis, lifts, frames, p, q, period })
}

/// Positive orientation, base point `(i, k)` and Sasaki/2 parameter.
pub fn prepare(front: &FrontCurve) -> Result<FrontCurve> {
    sasaki_reparametrize(&normalize_base(&positive_normal(front)?)?)
}

pub fn angle_function(front: &FrontCurve) -> Result<AngleFunction> {
    let mut w = raw_angles(front);
    let sing = front.singular_node();
    let branch = fix_branch(&mut w, sing)?;
    Ok(AngleFunction {
        axis: front.axis,
        omega: w,
        singular: sing.is_some(),
        positive: branch.positive,
        branch_c: branch.branch_c,
    })
}

/// `γ_d = cosh d·γ + sinh d·ν`, `ν_d = sinh d·γ + cosh d·ν`: the carrier
/// becomes `a·e^{−(d/2) j}`.
pub fn parallel_front(front: &FrontCurve, d: f64) -> FrontCurve {
    let (ch, sh) = (d.cosh(), d.sinh());
    let r = SplitQuat::new((0.5 * d).cosh(), 0.0, -(0.5 * d).sinh(), 0.0);
    let lifts = front.lifts.iter().map(|a| *a * r).collect();
    let p = front.p.iter().zip(&front.q).map(|(p, q)| ch * p + sh * q).collect();
    let q = front.p.iter().zip(&front.q).map(|(p, q)| sh * p + ch * q).collect();
    front.with_lifts(lifts, p, q, front.axis)
}

/// How the curvature values of an admissible pair are separated.
///
/// `Ordered` margins are in curvature units (`min k₁ − max k₂`); `Disjoint`
/// margins are the angular gap in ℝP¹ between the two curvature arcs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Separation {
    Ordered { margin: f64 },
    Disjoint { margin: f64 },
}

impl Separation {
    pub fn margin(&self) -> f64 {
        match *self {
            Separation::Ordered { margin } | Separation::Disjoint { margin } => margin,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissiblePair {
    pub gamma1: FrontCurve,
    pub gamma2: FrontCurve,
    pub separation: Separation,
    /// The inputs were exchanged to put the regular / larger-curvature front first.
    pub swapped: bool,
}

struct Sampled {
    params: Vec<f64>,
    omega: Vec<f64>,
    lo: f64,
    hi: f64,
    singular: bool,
}

fn sample_angles(front: &FrontCurve, n_samples: usize) -> Result<Sampled> {
    let af = angle_function(front)?;
    if !af.positive {
        return Err(Error::Hypothesis("front is not positively oriented".into()));
    }
    let (start, end) = front.domain();
    let n = n_samples.max(2);
    let params: Vec<f64> = (0..n).map(|i| start + (end - start) * i as f64 / (n - 1) as f64).collect();
    let omega = params.iter().map(|&s| af.at(s)).collect::<Result<Vec<_>>>()?;
    // widen by half of the largest jump between consecutive samples
    let slack = omega.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0, f64::max) * 0.5;
    let (lo, hi) = min_max(&omega);
    Ok(Sampled { params, omega, lo: lo - slack, hi: hi + slack, singular: af.singular })
}

fn check_base(front: &FrontCurve) -> Result<()> {
    let d = front.frame_at(0.0)?.distance(&Frame::BASE);
    if d > 1e-8 {
        return Err(Error::Hypothesis(format!("front is not normalized to (i, k) at s = 0 (defect {d:e})")));
    }
    Ok(())
}

const MAX_OFFENDERS: usize = 16;

/// Decide whether `k₁(u) ≠ k₂(v)` for all sampled `(u, v)`, with `k₁ > k₂`
/// when both fronts are regular. Roles are swapped when that makes the pair admissible.
pub fn check_admissible(g1: &FrontCurve, g2: &FrontCurve, n_samples: usize) -> Result<AdmissiblePair> {
    check_base(g1)?;
    check_base(g2)?;
    let a = sample_angles(g1, n_samples)?;
    let b = sample_angles(g2, n_samples)?;
    let offenders = |a: &Sampled, b: &Sampled, bad: &dyn Fn(f64, f64) -> bool| -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        'outer: for (u, wu) in a.params.iter().zip(&a.omega) {
            for (v, wv) in b.params.iter().zip(&b.omega) {
                if bad(*wu, *wv) {
                    out.push((*u, *v));
                    if out.len() >= MAX_OFFENDERS {
                        break 'outer;
                    }
                }
            }
        }
        out
    };
    let pair = |g1: &FrontCurve, g2: &FrontCurve, separation, swapped| AdmissiblePair {
        gamma1: g1.clone(),
        gamma2: g2.clone(),
        separation,
        swapped,
    };
    match (a.singular, b.singular) {
        (false, false) => {
            // k decreasing in ω on (0, π)
            if a.hi < b.lo {
                let margin = a.hi.tan().recip() - b.lo.tan().recip();
                Ok(pair(g1, g2, Separation::Ordered { margin }, false))
            } else if b.hi < a.lo {
                let margin = b.hi.tan().recip() - a.lo.tan().recip();
                Ok(pair(g2, g1, Separation::Ordered { margin }, true))
            } else {
                let offending = offenders(&a, &b, &|x, y| (x - y).abs() <= (a.hi - a.lo).max(b.hi - b.lo).max(1e-12) && x >= y - 1e-12);
                Err(Error::NotAdmissible { reason: "curvature ranges overlap".into(), offending })
            }
        }
        (true, true) => {
            let offending = offenders(&a, &b, &|x, y| (x - y).abs() < 1e-3);
            Err(Error::NotAdmissible { reason: "both fronts are singular; both curvature images contain ∞".into(), offending })
        }
        (sa, _) => {
            let (reg, sing, swapped) = if sa { (&b, &a, true) } else { (&a, &b, false) };
            // singular arc sits around π; compare on ℝ/πℤ
            let gap_low = reg.lo - (sing.hi - PI);
            let gap_high = sing.lo - reg.hi;
            let margin = gap_low.min(gap_high);
            let (r1, r2) = if swapped { (g2, g1) } else { (g1, g2) };
            if margin > 0.0 {
                Ok(pair(r1, r2, Separation::Disjoint { margin }, swapped))
            } else {
                let offending =
                    offenders(reg, sing, &|x, y| ((x - y) / PI - ((x - y) / PI).round()).abs() * PI < 1e-2);
                Err(Error::NotAdmissible { reason: "curvature arcs intersect in RP¹".into(), offending })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn fd_curvature(front: &FrontCurve, s: f64, h: f64) -> f64 {
        let g = |x| front.gamma(x).unwrap();
        let d1 = (g(s + h) - g(s - h)) / (2.0 * h);
        let d2 = (g(s + h) - g(s) * 2.0 + g(s - h)) / (h * h);
        inner(d2, front.nu(s).unwrap()) / d1.norm_sq()
    }

    #[test]
    fn geodesic_has_zero_curvature() {
        let f = make_front_from_curvature(&|_| PI / 2.0, -2.0, 2.0, 1e-3, None).unwrap();
        for s in [-1.5, 0.0, 0.7] {
            let k = geodesic_curvature(&f, s).unwrap();
            assert_abs_diff_eq!(k.k.unwrap(), 0.0, epsilon = 1e-12);
            // γ(s) = cosh 2s i + sinh 2s j
            let expect = SplitQuat::I * (2.0 * s).cosh() + SplitQuat::J * (2.0 * s).sinh();
            assert!((f.gamma(s).unwrap() - expect).max_abs() < 1e-9);
        }
        let af = angle_function(&f).unwrap();
        assert!(af.omega.iter().all(|w| (w - PI / 2.0).abs() < 1e-12));
    }

    #[test]
    fn circle_of_curvature_two() {
        let f = constant_curvature_front(2.0, -1.0, 4.0, 1e-3).unwrap();
        let l = f.period().unwrap();
        assert_abs_diff_eq!(l, PI / 0.6f64.sqrt(), epsilon = 1e-12);
        assert!(f.frame_at(l).unwrap().distance(&Frame::BASE) < 1e-9);
        assert!(f.frame_residual() < 1e-12);
        for s in [-0.5, 0.3, 1.1, 2.9] {
            assert_abs_diff_eq!(fd_curvature(&f, s, 1e-3), 2.0, epsilon = 1e-4);
        }
    }

    #[test]
    fn non_closing_period_is_rejected() {
        let r = make_front_from_curvature(&|_| PI / 2.0, -1.0, 3.0, 1e-3, Some(2.0));
        assert!(matches!(r, Err(Error::NotClosable { .. })));
    }

    #[test]
    fn wavy_front_curvature_matches_cot() {
        let w = |s: f64| PI / 2.0 + 0.3 * s.sin();
        let f = make_front_from_curvature(&w, -3.0, 3.0, 1e-3, None).unwrap();
        for s in [-2.0, -0.4, 1.3, 2.5] {
            assert_abs_diff_eq!(fd_curvature(&f, s, 1e-3), 1.0 / w(s).tan(), epsilon = 1e-4);
        }
        let af = angle_function(&f).unwrap();
        assert!(af.positive && !af.singular);
        for a in af.samples().iter().step_by(97) {
            assert_abs_diff_eq!(a.omega, w(a.s), epsilon = 1e-12);
        }
    }

    #[test]
    fn positive_normal_flips_regular_fronts() {
        let f = constant_curvature_front(2.0, -1.0, 1.0, 1e-3).unwrap();
        let neg = negate_normal(&f);
        assert!(!angle_function(&neg).unwrap().positive);
        let back = positive_normal(&neg).unwrap();
        assert_eq!(back.frames(), f.frames());
        assert_eq!(back.p(), f.p());
        assert_eq!(positive_normal(&f).unwrap(), f);
    }

    #[test]
    fn cusped_parallel_front() {
        let w = |s: f64| 0.4 + 0.2 * s.sin();
        let f = make_front_from_curvature(&w, -3.0, 3.0, 1e-3, None).unwrap();
        let d = 0.4f64.tan().atanh();
        let par = parallel_front(&f, d);
        let cusps = par.singular_parameters();
        assert!(!cusps.is_empty());
        assert!(cusps.iter().any(|c| c.abs() < 1e-3), "{cusps:?}");
        assert!(geodesic_curvature(&par, 0.0).unwrap().is_infinite());
        let pos = positive_normal(&par).unwrap();
        let af = angle_function(&pos).unwrap();
        assert!(af.singular && af.positive);
        let c = af.branch_c.unwrap();
        assert!(c > 0.0 && c < PI);
        for &w in &af.omega {
            assert!(w > PI - c && w < TAU - c);
        }
        let k = geodesic_curvature(&pos, 0.0).unwrap();
        assert_eq!(k.cos, -1.0);
        for fr in par.frames() {
            assert_abs_diff_eq!(fr.gamma.norm_sq(), -1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn parallel_at_zero_is_identity() {
        let f = constant_curvature_front(3.0, -1.0, 1.0, 1e-3).unwrap();
        for (a, b) in parallel_front(&f, 0.0).frames().iter().zip(f.frames()) {
            assert!(a.distance(b) < 1e-15);
        }
    }

    #[test]
    fn sasaki_reparametrization() {
        // unit-speed geodesic with parallel normal: p = 1, q = 0
        let axis = UniformAxis::covering(-2.0, 2.0, 1e-3).unwrap();
        let f = FrontCurve::from_frame_ode(&|_| (1.0, 0.0), axis, Frame::BASE, None).unwrap();
        let g = sasaki_reparametrize(&f).unwrap();
        assert!(g.sasaki_speed_sq().iter().all(|x| (x - 4.0).abs() < 1e-12));
        assert_abs_diff_eq!(g.domain().1, 1.0, epsilon = 1e-3);
        assert!((g.gamma(0.5).unwrap() - f.gamma(1.0).unwrap()).max_abs() < 1e-9);
        let again = sasaki_reparametrize(&g).unwrap();
        for (a, b) in again.frames().iter().zip(g.frames()) {
            assert!(a.distance(b) < 1e-8);
        }
    }

    #[test]
    fn normalize_base_moves_frame() {
        let f = constant_curvature_front(2.0, -1.0, 1.0, 1e-3).unwrap();
        let moved = FrontCurve::from_frame_ode(
            &|_| (2.0 * acot(2.0).sin(), -2.0 * acot(2.0).cos()),
            *f.axis(),
            Frame::BASE.conjugated(SplitQuat::new(1.2, 0.3, 0.5, -0.4) / (1.44 + 0.09 - 0.25 - 0.16f64).sqrt()),
            None,
        )
        .unwrap();
        let n = normalize_base(&moved).unwrap();
        for (a, b) in n.frames().iter().zip(f.frames()).step_by(50) {
            assert!(a.distance(b) < 1e-9);
        }
    }

    #[test]
    fn admissibility_examples() {
        let g1 = make_front_from_curvature(&|s: f64| acot(2.5 + 0.5 * s.sin()), -2.0, 2.0, 1e-3, None).unwrap();
        let g2 = constant_curvature_front(0.0, -2.0, 2.0, 1e-3).unwrap();
        let pair = check_admissible(&g1, &g2, 400).unwrap();
        assert!(!pair.swapped);
        assert!(matches!(pair.separation, Separation::Ordered { .. }));
        assert_abs_diff_eq!(pair.separation.margin(), 2.0, epsilon = 1e-2);
        let swapped = check_admissible(&g2, &g1, 400).unwrap();
        assert!(swapped.swapped);

        let one = constant_curvature_front(1.0, -2.0, 2.0, 1e-3).unwrap();
        match check_admissible(&one, &one, 50) {
            Err(Error::NotAdmissible { offending, .. }) => assert!(!offending.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn admissible_against_singular_front() {
        // cos ω ≤ −cos(0.197) near π: |k| ≥ 5 and passes through ∞
        let sing = make_front_from_curvature(&|s: f64| PI + 0.19 * s.sin(), -2.0, 2.0, 1e-3, None).unwrap();
        assert!(sing.is_singular());
        let reg = make_front_from_curvature(&|s: f64| acot(0.5 + 0.5 * s.cos()), -2.0, 2.0, 1e-3, None).unwrap();
        let pair = check_admissible(&sing, &reg, 300).unwrap();
        assert!(pair.swapped);
        assert!(matches!(pair.separation, Separation::Disjoint { .. }));
    }
}
