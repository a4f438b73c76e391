//! Completeness of the flat metric `du² + 2 cos ω du dv + dv²`, `ω = ω₁ + ω₂`,
//! which is the pullback of `dx² + dy²` under the chart.
//!
//! A margin `0 < c₁ ≤ ω ≤ c₂ < π` certifies it; otherwise divergent paths of
//! finite length are searched for by watching how path lengths grow under
//! repeated doubling of the radius.

use serde::{Deserialize, Serialize};

use crate::sampling::adaptive_simpson;

/// An angle function on `[min, max]`.
pub struct AngleProfile<'a> {
    pub omega: &'a dyn Fn(f64) -> f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompletenessOptions {
    /// Required distance of `ω₁ + ω₂` from 0 and π for certification.
    pub margin: f64,
    /// Samples per profile for the bounds.
    pub bound_samples: usize,
    /// Number of radius halvings below the probe radius.
    pub doublings: usize,
    /// Length increments must shrink at least this fast to suspect a finite limit.
    pub ratio: f64,
    /// How many of the largest doublings the ratio test looks at.
    pub window: usize,
    /// Probe radius; defaults to the extent of the profiles.
    pub probe: Option<f64>,
}

impl Default for CompletenessOptions {
    fn default() -> Self {
        CompletenessOptions { margin: 1e-3, bound_samples: 4001, doublings: 12, ratio: 0.75, window: 4, probe: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathWitness {
    /// `"diagonal"` or `"greedy"`.
    pub kind: String,
    /// Quadrant signs of the path.
    pub direction: (i8, i8),
    /// Chebyshev radii, increasing.
    pub radii: Vec<f64>,
    /// Path length up to each radius.
    pub lengths: Vec<f64>,
    /// Geometric extrapolation of the length to infinite radius.
    pub limit_estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Completeness {
    Certified { c1: f64, c2: f64 },
    SuspectedIncomplete { c1: f64, c2: f64, witness: PathWitness },
    Unknown { c1: f64, c2: f64, reason: String },
}

impl Completeness {
    pub fn label(&self) -> &'static str {
        match self {
            Completeness::Certified { .. } => "certified",
            Completeness::SuspectedIncomplete { .. } => "suspected-incomplete",
            Completeness::Unknown { .. } => "unknown",
        }
    }
}

fn bounds(p: &AngleProfile, n: usize) -> (f64, f64) {
    let n = n.max(2);
    (0..n)
        .map(|k| (p.omega)(p.min + (p.max - p.min) * k as f64 / (n - 1) as f64))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), w| (lo.min(w), hi.max(w)))
}

/// Ratio test on lengths at increasing radii; `Some(limit)` when increments
/// shrink geometrically over the last `window` doublings.
fn converging(lengths: &[f64], ratio: f64, window: usize) -> Option<f64> {
    let inc: Vec<f64> = lengths.windows(2).map(|w| w[1] - w[0]).collect();
    if inc.len() < window + 1 {
        return None;
    }
    let tail = &inc[inc.len() - window - 1..];
    let ratios: Vec<f64> = tail.windows(2).map(|w| if w[0] > 0.0 { w[1] / w[0] } else { f64::INFINITY }).collect();
    if ratios.iter().all(|r| *r <= ratio) {
        let r = *ratios.last().expect("window ≥ 1");
        let last = *inc.last().expect("nonempty");
        Some(lengths[lengths.len() - 1] + last * r / (1.0 - r))
    } else {
        None
    }
}

fn radii(r_max: f64, doublings: usize) -> Vec<f64> {
    (0..=doublings).rev().map(|k| r_max / 2f64.powi(k as i32)).collect()
}

fn diagonal_lengths(w1: &AngleProfile, w2: &AngleProfile, su: f64, sv: f64, rs: &[f64]) -> Vec<f64> {
    let speed = |t: f64| {
        let w = (w1.omega)(su * t) + (w2.omega)(sv * t);
        (2.0 + 2.0 * su * sv * w.cos()).max(0.0).sqrt()
    };
    let mut out = Vec::with_capacity(rs.len());
    let mut acc = adaptive_simpson(&speed, 0.0, rs[0], 1e-12);
    out.push(acc);
    for w in rs.windows(2) {
        acc += adaptive_simpson(&speed, w[0], w[1], 1e-12 * (w[1] - w[0]).max(1.0));
        out.push(acc);
    }
    out
}

/// Monotone path from the origin choosing at each step the direction in the
/// quadrant with the least length per unit of `|u| + |v|` progress.
fn greedy_lengths(w1: &AngleProfile, w2: &AngleProfile, su: f64, sv: f64, rs: &[f64]) -> Vec<f64> {
    const FAN: usize = 17;
    let r_max = *rs.last().expect("nonempty");
    let (mut u, mut v, mut len) = (0.0f64, 0.0f64, 0.0f64);
    let mut out = Vec::with_capacity(rs.len());
    let mut next = 0;
    let mut guard = 0usize;
    while next < rs.len() && guard < 2_000_000 {
        guard += 1;
        let r = u.abs().max(v.abs());
        let delta = (r / 512.0).max(rs[0] / 64.0).min(r_max / 64.0);
        let w = (w1.omega)(u) + (w2.omega)(v);
        let (mut best, mut best_dir) = (f64::INFINITY, (1.0, 1.0));
        for k in 0..FAN {
            let th = std::f64::consts::FRAC_PI_2 * k as f64 / (FAN - 1) as f64;
            let (a, b) = (th.cos(), th.sin());
            let cost = (a * a + b * b + 2.0 * su * sv * a * b * w.cos()).max(0.0).sqrt() / (a + b);
            if cost < best {
                best = cost;
                best_dir = (a, b);
            }
        }
        // scale so that the Chebyshev radius grows by delta
        let (a, b) = best_dir;
        let s = delta / a.max(b);
        let (du, dv) = (su * a * s, sv * b * s);
        let wm = (w1.omega)(u + 0.5 * du) + (w2.omega)(v + 0.5 * dv);
        let seg = (du * du + dv * dv + 2.0 * du * dv * wm.cos()).max(0.0).sqrt();
        let r_new = (u + du).abs().max((v + dv).abs());
        if r_new >= rs[next] {
            // linear share of the step up to the threshold
            let frac = ((rs[next] - r) / (r_new - r)).clamp(0.0, 1.0);
            out.push(len + frac * seg);
            next += 1;
            while next < rs.len() && r_new >= rs[next] {
                out.push(len + seg);
                next += 1;
            }
        }
        u += du;
        v += dv;
        len += seg;
    }
    out
}

/// Certify completeness by bounds, or look for finite-length divergent paths.
pub fn completeness_check(w1: &AngleProfile, w2: &AngleProfile, opts: &CompletenessOptions) -> Completeness {
    let (lo1, hi1) = bounds(w1, opts.bound_samples);
    let (lo2, hi2) = bounds(w2, opts.bound_samples);
    let (c1, c2) = (lo1 + lo2, hi1 + hi2);
    if c1 > opts.margin && c2 < std::f64::consts::PI - opts.margin {
        return Completeness::Certified { c1, c2 };
    }
    let mut best: Option<PathWitness> = None;
    for (su, sv) in [(1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
        let reach_u = if su > 0.0 { w1.max } else { -w1.min };
        let reach_v = if sv > 0.0 { w2.max } else { -w2.min };
        let r = opts.probe.unwrap_or(f64::INFINITY).min(reach_u).min(reach_v);
        if !(r > 0.0) {
            continue;
        }
        let rs = radii(r, opts.doublings);
        for kind in ["diagonal", "greedy"] {
            let lengths = if kind == "diagonal" {
                diagonal_lengths(w1, w2, su, sv, &rs)
            } else {
                greedy_lengths(w1, w2, su, sv, &rs)
            };
            if lengths.len() != rs.len() {
                continue;
            }
            if let Some(limit) = converging(&lengths, opts.ratio, opts.window) {
                let better = best.as_ref().is_none_or(|b| limit < b.limit_estimate - 1e-9);
                if better {
                    best = Some(PathWitness {
                        kind: kind.into(),
                        direction: (su as i8, sv as i8),
                        radii: rs.clone(),
                        lengths,
                        limit_estimate: limit,
                    });
                }
            }
        }
    }
    match best {
        Some(witness) => Completeness::SuspectedIncomplete { c1, c2, witness },
        None => Completeness::Unknown {
            c1,
            c2,
            reason: "angle bounds fail and no probed path has converging length".into(),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn bounded_angles_are_certified() {
        let w = |u: f64| PI / 4.0 + 0.1 * u.sin();
        let p = AngleProfile { omega: &w, min: -5.0, max: 5.0 };
        let c = completeness_check(&p, &p, &CompletenessOptions::default());
        assert!(matches!(c, Completeness::Certified { .. }), "{c:?}");
    }

    #[test]
    fn collapsing_diagonal_is_found() {
        let c0 = 0.99;
        let w1 = move |u: f64| 0.5 * (c0 / (1.0 + u * u)).acos();
        let w2 = move |v: f64| PI / 2.0 + w1(v);
        let p1 = AngleProfile { omega: &w1, min: -1e4, max: 1e4 };
        let p2 = AngleProfile { omega: &w2, min: -1e4, max: 1e4 };
        match completeness_check(&p1, &p2, &CompletenessOptions::default()) {
            Completeness::SuspectedIncomplete { witness, .. } => {
                assert_eq!(witness.kind, "diagonal");
                assert!(witness.limit_estimate < 2.0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn touching_zero_without_short_path_is_unknown() {
        let w = |u: f64| 0.25 * PI * (1.0 + u.cos()) / 2.0 + 0.1 / (1.0 + u * u);
        let p = AngleProfile { omega: &w, min: -200.0, max: 200.0 };
        let c = completeness_check(&p, &p, &CompletenessOptions::default());
        assert!(matches!(c, Completeness::Unknown { .. }), "{c:?}");
    }
}
