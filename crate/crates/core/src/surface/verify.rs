//! Full numerical verification of a synthesized patch.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{Check, VerificationReport};

use super::chart::patch_chart;
use super::forms::{gauss_weingarten_residual, left_invariance_residual, measured_forms, normal_residual};
use super::FlatSurfacePatch;

/// Tolerances of the patch checks, addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Tolerances {
    pub fd_step: f64,
    pub quadric: f64,
    pub normal_relations: f64,
    pub normal_identity: f64,
    pub forms: f64,
    pub asymptotic_directions: f64,
    pub gauss_identity: f64,
    pub gauss_weingarten: f64,
    pub left_invariance: f64,
    pub chart_gradient: f64,
    pub isometry: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            fd_step: 1e-3,
            quadric: 1e-8,
            normal_relations: 1e-6,
            normal_identity: 1e-5,
            forms: 1e-4,
            asymptotic_directions: 1e-5,
            gauss_identity: 1e-4,
            gauss_weingarten: 1e-3,
            left_invariance: 1e-5,
            chart_gradient: 1e-5,
            isometry: 1e-5,
        }
    }
}

impl Tolerances {
    pub const NAMES: [&'static str; 11] = [
        "fd_step",
        "quadric",
        "normal_relations",
        "normal_identity",
        "forms",
        "asymptotic_directions",
        "gauss_identity",
        "gauss_weingarten",
        "left_invariance",
        "chart_gradient",
        "isometry",
    ];

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::Spec(format!("tolerance `{name}` must be positive, got {value}")));
        }
        let slot = match name {
            "fd_step" => &mut self.fd_step,
            "quadric" => &mut self.quadric,
            "normal_relations" => &mut self.normal_relations,
            "normal_identity" => &mut self.normal_identity,
            "forms" => &mut self.forms,
            "asymptotic_directions" => &mut self.asymptotic_directions,
            "gauss_identity" => &mut self.gauss_identity,
            "gauss_weingarten" => &mut self.gauss_weingarten,
            "left_invariance" => &mut self.left_invariance,
            "chart_gradient" => &mut self.chart_gradient,
            "isometry" => &mut self.isometry,
            _ => return Err(Error::Spec(format!("unknown tolerance `{name}`; known: {}", Tolerances::NAMES.join(", ")))),
        };
        *slot = value;
        Ok(())
    }
}

#[derive(Default, Clone, Copy)]
struct Maxima {
    quadric: f64,
    relations: f64,
    identity: f64,
    first: f64,
    second: f64,
    third: f64,
    asym: f64,
    gauss: f64,
    gw: f64,
    left: f64,
    isometry: f64,
    min_sine: f64,
}

impl Maxima {
    fn merge(mut self, o: Maxima) -> Maxima {
        self.quadric = self.quadric.max(o.quadric);
        self.relations = self.relations.max(o.relations);
        self.identity = self.identity.max(o.identity);
        self.first = self.first.max(o.first);
        self.second = self.second.max(o.second);
        self.third = self.third.max(o.third);
        self.asym = self.asym.max(o.asym);
        self.gauss = self.gauss.max(o.gauss);
        self.gw = self.gw.max(o.gw);
        self.left = self.left.max(o.left);
        self.isometry = self.isometry.max(o.isometry);
        self.min_sine = self.min_sine.min(o.min_sine);
        self
    }
}

/// Five-point derivative of a pair-valued node function at node `k`.
fn d5(p: &dyn Fn(usize) -> (f64, f64), k: usize, h: f64) -> (f64, f64) {
    let (a, b, c, d) = (p(k - 2), p(k - 1), p(k + 1), p(k + 2));
    ((a.0 - 8.0 * b.0 + 8.0 * c.0 - d.0) / (12.0 * h), (a.1 - 8.0 * b.1 + 8.0 * c.1 - d.1) / (12.0 * h))
}

fn d5f(p: &dyn Fn(f64) -> Result<(f64, f64)>, t: f64, h: f64) -> Result<(f64, f64)> {
    let (a, b, c, d) = (p(t - 2.0 * h)?, p(t - h)?, p(t + h)?, p(t + 2.0 * h)?);
    Ok(((a.0 - 8.0 * b.0 + 8.0 * c.0 - d.0) / (12.0 * h), (a.1 - 8.0 * b.1 + 8.0 * c.1 - d.1) / (12.0 * h)))
}

/// Run every patch invariant over the interior grid nodes.
pub fn verify_patch(patch: &FlatSurfacePatch, tol: &Tolerances) -> Result<VerificationReport> {
    let g = *patch.grid();
    let h = tol.fd_step;
    let (iu, iv) = (g.u.len, g.v.len);
    if iu < 3 || iv < 3 {
        return Err(Error::InvalidGrid("verification needs at least 3 × 3 nodes".into()));
    }
    let w1: Vec<f64> = g.u.nodes().map(|u| patch.omega1(u)).collect::<Result<_>>()?;
    let w2: Vec<f64> = g.v.nodes().map(|v| patch.omega2(v)).collect::<Result<_>>()?;
    let chart = patch_chart(patch)?;
    let (hu, hv) = (chart.u_axis.step, chart.v_axis.step);

    let interior = |u: f64, v: f64| {
        u - 2.0 * h >= g.u.start - 1e-12 && u + 2.0 * h <= g.u.end() + 1e-12 && v - 2.0 * h >= g.v.start - 1e-12 && v + 2.0 * h <= g.v.end() + 1e-12
    };
    let init = Maxima { min_sine: f64::INFINITY, ..Maxima::default() };
    let rows: Vec<Result<Maxima>> = (0..iu)
        .into_par_iter()
        .map(|i| {
            let mut m = init;
            let u = g.u.at(i);
            for j in 0..iv {
                let v = g.v.at(j);
                let f = patch.f_nodes()[g.index(i, j)];
                m.quadric = m.quadric.max((f.norm_sq() + 1.0).abs());
                let w = w1[i] + w2[j];
                m.min_sine = m.min_sine.min(w.sin());
                if !interior(u, v) {
                    continue;
                }
                let meas = measured_forms(patch, u, v, h)?;
                let closed = patch.closed_forms_at(u, v)?;
                let [d1, d2, d3] = meas.diff(&closed);
                m.first = m.first.max(d1);
                m.second = m.second.max(d2);
                m.third = m.third.max(d3);
                m.asym = m.asym.max(meas.second[0].abs()).max(meas.second[2].abs());
                m.gauss = m.gauss.max(meas.gauss_defect(w).abs());
                let nr = normal_residual(patch, u, v, h)?;
                m.relations = m.relations.max(nr.relations);
                m.identity = m.identity.max(nr.identity);
                m.gw = m.gw.max(gauss_weingarten_residual(patch, u, v, h)?.max());
                m.left = m.left.max(left_invariance_residual(patch, u, v, h)?);
                // pullback of −dx² + dy² through the chart vs closed I
                let (xu, yu) = d5f(&|t| chart.at(t, v), u, hu)?;
                let (xv, yv) = d5f(&|t| chart.at(u, t), v, hv)?;
                let pulled = [-xu * xu + yu * yu, -xu * xv + yu * yv, -xv * xv + yv * yv];
                let iso = (0..3).map(|k| (pulled[k] - closed.first[k]).abs()).fold(0.0, f64::max);
                m.isometry = m.isometry.max(iso);
            }
            Ok(m)
        })
        .collect();
    let mut m = init;
    for r in rows {
        m = m.merge(r?);
    }

    // chart gradient along the axes against (cos ω, ±sin ω)
    let grad = |axis: &crate::sampling::UniformAxis, w: &[f64], sign: f64, pick: &dyn Fn(usize) -> (f64, f64)| -> f64 {
        let mut worst = 0.0f64;
        for k in 2..axis.len.saturating_sub(2) {
            let (dx, dy) = d5(pick, k, axis.step);
            worst = worst.max((dx - w[k].cos()).abs()).max((dy - sign * w[k].sin()).abs());
        }
        worst
    };
    let fw1: Vec<f64> = chart.u_axis.nodes().map(|u| patch.omega1(u)).collect::<Result<_>>()?;
    let fw2: Vec<f64> = chart.v_axis.nodes().map(|v| patch.omega2(v)).collect::<Result<_>>()?;
    let o1 = chart.v_axis.nearest(0.0);
    let o2 = chart.u_axis.nearest(0.0);
    let gu = grad(&chart.u_axis, &fw1, 1.0, &|k| chart.at_node(k, o1));
    let gv = grad(&chart.v_axis, &fw2, -1.0, &|k| chart.at_node(o2, k));

    let mut r = VerificationReport::default();
    r.push(Check::at_most("quadric", m.quadric, tol.quadric));
    r.push(Check { invariant: "sine_positivity".into(), max_residual: (-m.min_sine).max(0.0), tolerance: 0.0, pass: m.min_sine > 0.0 });
    r.push(Check::at_most("normal_relations", m.relations, tol.normal_relations));
    r.push(Check::at_most("normal_identity", m.identity, tol.normal_identity));
    r.push(Check::at_most("first_form", m.first, tol.forms));
    r.push(Check::at_most("second_form", m.second, tol.forms));
    r.push(Check::at_most("third_form", m.third, tol.forms));
    r.push(Check::at_most("asymptotic_directions", m.asym, tol.asymptotic_directions));
    r.push(Check::at_most("gauss_identity", m.gauss, tol.gauss_identity));
    r.push(Check::at_most("gauss_weingarten", m.gw, tol.gauss_weingarten));
    r.push(Check::at_most("left_invariance", m.left, tol.left_invariance));
    r.push(Check::at_most("chart_gradient", gu.max(gv), tol.chart_gradient));
    r.push(Check::at_most("isometry", m.isometry, tol.isometry));
    r.note("min_sine", m.min_sine);
    r.note("grid_nodes", g.len());
    r.note("completeness", &chart.completeness);
    Ok(r)
}
