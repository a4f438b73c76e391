//! Uniform parameter grids, interpolation and quadrature helpers shared by
//! fronts, lifts and the coordinate chart.

use serde::{Deserialize, Serialize};

use crate::cliffalg::SplitQuat;
use crate::error::{Error, Result};

/// Nodes `start + n·step` for `n = 0..len`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UniformAxis {
    pub start: f64,
    pub step: f64,
    pub len: usize,
}

impl UniformAxis {
    pub fn new(start: f64, step: f64, len: usize) -> Result<Self> {
        if !(step > 0.0) || !step.is_finite() || !start.is_finite() {
            return Err(Error::InvalidGrid(format!("step must be positive and finite, got {step}")));
        }
        if len < 2 {
            return Err(Error::InvalidGrid("an axis needs at least two nodes".into()));
        }
        Ok(UniformAxis { start, step, len })
    }

    /// Axis through 0 covering `[min, max]` with nodes on multiples of `step`.
    pub fn covering(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(min <= 0.0 && max >= 0.0 && max > min) {
            return Err(Error::InvalidGrid(format!("range [{min}, {max}] must contain 0 and be non-degenerate")));
        }
        if !(step > 0.0) {
            return Err(Error::InvalidGrid(format!("step must be positive, got {step}")));
        }
        let back = (-min / step - 1e-9).ceil().max(0.0) as usize;
        let fwd = (max / step - 1e-9).ceil().max(0.0) as usize;
        UniformAxis::new(-(back as f64) * step, step, back + fwd + 1)
    }

    /// Axis from `min` to `max` inclusive; `(max - min) / step` must be an integer to 1e-6.
    pub fn from_range(min: f64, max: f64, step: f64) -> Result<Self> {
        if !(max > min) || !(step > 0.0) {
            return Err(Error::InvalidGrid(format!("bad range {min}:{max}:{step}")));
        }
        let n = (max - min) / step;
        let nr = n.round();
        if (n - nr).abs() > 1e-6 {
            return Err(Error::InvalidGrid(format!("step {step} does not divide [{min}, {max}]")));
        }
        UniformAxis::new(min, step, nr as usize + 1)
    }

    pub fn at(&self, n: usize) -> f64 {
        self.start + n as f64 * self.step
    }

    pub fn end(&self) -> f64 {
        self.at(self.len - 1)
    }

    pub fn contains(&self, s: f64) -> bool {
        let tol = 1e-9 * self.step;
        s >= self.start - tol && s <= self.end() + tol
    }

    /// Index of the node nearest to `s` (clamped).
    pub fn nearest(&self, s: f64) -> usize {
        let x = ((s - self.start) / self.step).round();
        x.clamp(0.0, (self.len - 1) as f64) as usize
    }

    /// Index of the node at exactly `s`, if any (to 1e-9 of a step).
    pub fn node_of(&self, s: f64) -> Option<usize> {
        let x = (s - self.start) / self.step;
        let r = x.round();
        if (x - r).abs() < 1e-9 && r >= 0.0 && (r as usize) < self.len {
            Some(r as usize)
        } else {
            None
        }
    }

    /// Cell index `n` and local coordinate `t ∈ [0, 1]` with `s = at(n) + t·step`.
    pub fn locate(&self, s: f64) -> Result<(usize, f64)> {
        if !self.contains(s) {
            return Err(Error::OutOfDomain { at: s, start: self.start, end: self.end() });
        }
        let x = ((s - self.start) / self.step).clamp(0.0, (self.len - 1) as f64);
        let n = (x.floor() as usize).min(self.len - 2);
        Ok((n, x - n as f64))
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(move |n| self.at(n))
    }
}

/// Four-point Lagrange interpolation of uniformly sampled scalars.
pub fn cubic_interp(axis: &UniformAxis, values: &[f64], s: f64) -> Result<f64> {
    let (n, t) = axis.locate(s)?;
    if axis.len < 4 {
        return Ok(values[n] + t * (values[n + 1] - values[n]));
    }
    let i0 = n.saturating_sub(1).min(axis.len - 4);
    let x = (n - i0) as f64 + t;
    let v = &values[i0..i0 + 4];
    let l0 = -(x - 1.0) * (x - 2.0) * (x - 3.0) / 6.0;
    let l1 = x * (x - 2.0) * (x - 3.0) / 2.0;
    let l2 = -x * (x - 1.0) * (x - 3.0) / 2.0;
    let l3 = x * (x - 1.0) * (x - 2.0) / 6.0;
    Ok(l0 * v[0] + l1 * v[1] + l2 * v[2] + l3 * v[3])
}

/// Cubic Hermite interpolation between `(p0, d0)` and `(p1, d1)` over a cell of width `h`.
/// Returns the value and its derivative at local coordinate `t ∈ [0, 1]`.
pub fn hermite(p0: SplitQuat, d0: SplitQuat, p1: SplitQuat, d1: SplitQuat, h: f64, t: f64) -> (SplitQuat, SplitQuat) {
    let t2 = t * t;
    let t3 = t2 * t;
    let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    let h10 = t3 - 2.0 * t2 + t;
    let h01 = -2.0 * t3 + 3.0 * t2;
    let h11 = t3 - t2;
    let value = p0 * h00 + d0 * (h10 * h) + p1 * h01 + d1 * (h11 * h);
    let dh00 = 6.0 * t2 - 6.0 * t;
    let dh10 = 3.0 * t2 - 4.0 * t + 1.0;
    let dh01 = -6.0 * t2 + 6.0 * t;
    let dh11 = 3.0 * t2 - 2.0 * t;
    let deriv = p0 * (dh00 / h) + d0 * dh10 + p1 * (dh01 / h) + d1 * dh11;
    (value, deriv)
}

/// Cumulative integral `∫_{x_origin}^{x_n} f` of uniform samples for every node `n`,
/// by composite Simpson on node pairs plus a parabolic end piece on odd counts.
pub fn cumulative_simpson(values: &[f64], step: f64, origin: usize) -> Vec<f64> {
    let len = values.len();
    let mut out = vec![0.0; len];
    let one_sided = |vals: &dyn Fn(isize) -> f64, m: usize| -> f64 {
        // ∫_0^m of the samples vals(0..=m), in units of step
        if m == 0 {
            return 0.0;
        }
        let pairs = m / 2;
        let mut acc = 0.0;
        for p in 0..pairs {
            let a = 2 * p as isize;
            acc += (vals(a) + 4.0 * vals(a + 1) + vals(a + 2)) / 3.0;
        }
        if m % 2 == 1 {
            let a = (m - 1) as isize;
            // last interval [a, a+1] from the parabola through a-1, a, a+1 (or a, a+1, a+2)
            if a >= 1 {
                acc += (-vals(a - 1) + 8.0 * vals(a) + 5.0 * vals(a + 1)) / 12.0;
            } else {
                acc += (5.0 * vals(a) + 8.0 * vals(a + 1) - vals(a + 2)) / 12.0;
            }
        }
        acc
    };
    for (n, slot) in out.iter_mut().enumerate() {
        if n == origin {
            continue;
        }
        if n > origin {
            let m = n - origin;
            let f = |k: isize| -> f64 {
                let idx = (origin as isize + k).clamp(0, len as isize - 1) as usize;
                values[idx]
            };
            *slot = step * one_sided(&f, m);
        } else {
            let m = origin - n;
            let f = |k: isize| -> f64 {
                let idx = (origin as isize - k).clamp(0, len as isize - 1) as usize;
                values[idx]
            };
            *slot = -step * one_sided(&f, m);
        }
    }
    out
}

/// Adaptive Simpson quadrature of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    struct Seg {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let mut stack = vec![Seg { a, b, fa, fm, fb, whole: simpson(fa, fm, fb, a, b), tol, depth: 0 }];
    let mut total = 0.0;
    while let Some(s) = stack.pop() {
        let m = 0.5 * (s.a + s.b);
        let lm = 0.5 * (s.a + m);
        let rm = 0.5 * (m + s.b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(s.fa, flm, s.fm, s.a, m);
        let right = simpson(s.fm, frm, s.fb, m, s.b);
        let delta = left + right - s.whole;
        if s.depth >= 48 || delta.abs() <= 15.0 * s.tol {
            total += left + right + delta / 15.0;
        } else {
            stack.push(Seg { a: s.a, b: m, fa: s.fa, fm: flm, fb: s.fm, whole: left, tol: 0.5 * s.tol, depth: s.depth + 1 });
            stack.push(Seg { a: m, b: s.b, fa: s.fm, fm: frm, fb: s.fb, whole: right, tol: 0.5 * s.tol, depth: s.depth + 1 });
        }
    }
    total
}

/// Unwrap a sequence of angles so that consecutive values differ by less than π.
pub fn unwrap_angles(raw: &mut [f64]) {
    use std::f64::consts::{PI, TAU};
    for n in 1..raw.len() {
        let prev = raw[n - 1];
        let mut x = raw[n];
        while x - prev > PI {
            x -= TAU;
        }
        while x - prev < -PI {
            x += TAU;
        }
        raw[n] = x;
    }
}
