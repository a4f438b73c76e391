//! Compactness of the image: both generating curves closed, and the binormal
//! curves `β = a·j·ā` regular and closed in de Sitter 2-space.

use serde::{Deserialize, Serialize};

use crate::cliffalg::SplitQuat;
use crate::fronts::min_max;
use crate::lift::{closure_detect, AsymptoticCurve, ClosureRecord, CurveSource};

use super::FlatSurfacePatch;

/// Smallest binormal speed counted as regular.
pub const BETA_REGULAR_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinormalReport {
    /// Smallest Euclidean norm of `β'` over one period.
    pub min_speed: f64,
    /// `‖β(L) − β(0)‖`.
    pub closure_residual: f64,
    /// Largest `‖conj(β)·β' + 2a·conj(a')‖` with `β'` from central differences.
    pub identity_residual: f64,
    /// Largest `|⟨β, β⟩ − 1|`.
    pub sphere_residual: f64,
}

impl BinormalReport {
    pub fn regular_closed(&self) -> bool {
        self.min_speed > BETA_REGULAR_TOL && self.closure_residual <= 1e-6
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorusRecord {
    pub closure1: Option<ClosureRecord>,
    pub closure2: Option<ClosureRecord>,
    pub beta1: Option<BinormalReport>,
    pub beta2: Option<BinormalReport>,
    /// `min k₁ − max k₂` over one period of each curve, when both curvatures are finite.
    pub curvature_gap: Option<f64>,
    pub is_torus: bool,
}

fn beta(a: SplitQuat) -> SplitQuat {
    a * SplitQuat::J * a.conj()
}

fn binormal(c: &AsymptoticCurve, period: f64) -> Option<BinormalReport> {
    let h = c.axis().step;
    let (lo, hi) = c.domain();
    if lo > -h || hi < period + h {
        return None;
    }
    let n = ((period / h).round() as usize).max(1);
    let mut rep = BinormalReport { min_speed: f64::INFINITY, closure_residual: 0.0, identity_residual: 0.0, sphere_residual: 0.0 };
    for k in 0..=n {
        let u = period * k as f64 / n as f64;
        let (a, d) = c.eval(u).ok()?;
        let b = beta(a);
        let db = d * SplitQuat::J * a.conj() + a * SplitQuat::J * d.conj();
        rep.min_speed = rep.min_speed.min(db.euclid_norm());
        rep.sphere_residual = rep.sphere_residual.max((b.norm_sq() - 1.0).abs());
        let bp = beta(c.eval(u + h).ok()?.0);
        let bm = beta(c.eval(u - h).ok()?.0);
        let fd = (bp - bm) / (2.0 * h);
        let ident = b.conj() * fd + a * d.conj() * 2.0;
        rep.identity_residual = rep.identity_residual.max(ident.max_abs() / a.euclid_norm().powi(2).max(1.0));
    }
    let b0 = beta(c.eval(0.0).ok()?.0);
    let bl = beta(c.eval(period).ok()?.0);
    rep.closure_residual = (bl - b0).max_abs();
    Some(rep)
}

fn cot_range(c: &AsymptoticCurve, period: f64) -> Option<(f64, f64)> {
    let ax = c.axis();
    let ws: Vec<f64> = ax.nodes().zip(c.omega_samples()).filter(|(u, _)| *u >= 0.0 && *u <= period).map(|(_, w)| *w).collect();
    if ws.iter().any(|w| w.sin().abs() < 1e-12) {
        return None;
    }
    let ks: Vec<f64> = ws.iter().map(|w| 1.0 / w.tan()).collect();
    Some(min_max(&ks))
}

pub fn torus_check(patch: &FlatSurfacePatch) -> TorusRecord {
    let (a1, a2) = (patch.a1(), patch.a2());
    let closure1 = a1.period().map(|l| closure_detect(a1, l));
    let closure2 = a2.period().map(|l| closure_detect(a2, l));
    let beta1 = a1.period().and_then(|l| binormal(a1, l));
    let beta2 = a2.period().and_then(|l| binormal(a2, l));
    let curvature_gap = match (a1.period(), a2.period()) {
        (Some(l1), Some(l2)) => match (cot_range(a1, l1), cot_range(a2, l2)) {
            (Some((k1_lo, _)), Some((_, k2_hi))) => Some(k1_lo - k2_hi),
            _ => None,
        },
        _ => None,
    };
    let closed = |r: &Option<ClosureRecord>| r.is_some_and(|r| r.closed);
    let regular = |b: &Option<BinormalReport>| b.is_some_and(|b| b.regular_closed());
    let is_torus = closed(&closure1) && closed(&closure2) && regular(&beta1) && regular(&beta2);
    TorusRecord { closure1, closure2, beta1, beta2, curvature_gap, is_torus }
}
