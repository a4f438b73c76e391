//! The chart `(x, y)` in which the induced metric is `−dx² + dy²`.
//!
//! With `x_u = cos ω₁`, `y_u = sin ω₁`, `x_v = cos ω₂`, `y_v = −sin ω₂` the
//! integrands separate, so `x = X₁(u) + X₂(v)` and `y = Y₁(u) − Y₂(v)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampling::{cubic_interp, cumulative_simpson, UniformAxis};

use super::completeness::{completeness_check, AngleProfile, Completeness, CompletenessOptions};
use super::{FlatSurfacePatch, Grid};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoordinateChart {
    pub u_axis: UniformAxis,
    pub v_axis: UniformAxis,
    x1: Vec<f64>,
    y1: Vec<f64>,
    x2: Vec<f64>,
    y2: Vec<f64>,
    pub completeness: Completeness,
}

impl CoordinateChart {
    /// `(x, y)` at node `(i, j)` of the chart axes.
    pub fn at_node(&self, i: usize, j: usize) -> (f64, f64) {
        (self.x1[i] + self.x2[j], self.y1[i] - self.y2[j])
    }

    pub fn at(&self, u: f64, v: f64) -> Result<(f64, f64)> {
        let x = cubic_interp(&self.u_axis, &self.x1, u)? + cubic_interp(&self.v_axis, &self.x2, v)?;
        let y = cubic_interp(&self.u_axis, &self.y1, u)? - cubic_interp(&self.v_axis, &self.y2, v)?;
        Ok((x, y))
    }

    /// `x` and `y` over a grid, row-major.
    pub fn on_grid(&self, grid: &Grid) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut xs = Vec::with_capacity(grid.len());
        let mut ys = Vec::with_capacity(grid.len());
        for u in grid.u.nodes() {
            for v in grid.v.nodes() {
                let (x, y) = self.at(u, v)?;
                xs.push(x);
                ys.push(y);
            }
        }
        Ok((xs, ys))
    }
}

/// Chart from angle samples on two axes through 0; constants fixed by `x(0,0) = y(0,0) = 0`.
pub fn coordinate_chart(
    u_axis: UniformAxis,
    omega1: &[f64],
    v_axis: UniformAxis,
    omega2: &[f64],
) -> Result<CoordinateChart> {
    if omega1.len() != u_axis.len || omega2.len() != v_axis.len {
        return Err(Error::InvalidGrid("angle samples do not match their axes".into()));
    }
    let o1 = u_axis.node_of(0.0).ok_or_else(|| Error::InvalidGrid("u axis must contain 0".into()))?;
    let o2 = v_axis.node_of(0.0).ok_or_else(|| Error::InvalidGrid("v axis must contain 0".into()))?;
    let cos = |w: &[f64]| w.iter().map(|x| x.cos()).collect::<Vec<_>>();
    let sin = |w: &[f64]| w.iter().map(|x| x.sin()).collect::<Vec<_>>();
    let x1 = cumulative_simpson(&cos(omega1), u_axis.step, o1);
    let y1 = cumulative_simpson(&sin(omega1), u_axis.step, o1);
    let x2 = cumulative_simpson(&cos(omega2), v_axis.step, o2);
    let y2 = cumulative_simpson(&sin(omega2), v_axis.step, o2);
    let w1 = |u: f64| cubic_interp(&u_axis, omega1, u).unwrap_or(f64::NAN);
    let w2 = |v: f64| cubic_interp(&v_axis, omega2, v).unwrap_or(f64::NAN);
    let p1 = AngleProfile { omega: &w1, min: u_axis.start, max: u_axis.end() };
    let p2 = AngleProfile { omega: &w2, min: v_axis.start, max: v_axis.end() };
    let completeness = completeness_check(&p1, &p2, &CompletenessOptions::default());
    Ok(CoordinateChart { u_axis, v_axis, x1, y1, x2, y2, completeness })
}

/// Chart of a patch, integrated on the sample axes of its generating curves
/// over the grid plus two samples on each side.
pub fn patch_chart(patch: &FlatSurfacePatch) -> Result<CoordinateChart> {
    let g = patch.grid();
    let fine = |grid_ax: &UniformAxis, curve_ax: &UniformAxis| -> Result<UniformAxis> {
        let h = curve_ax.step;
        let lo = (grid_ax.start - 2.0 * h).max(curve_ax.start).min(0.0);
        let hi = (grid_ax.end() + 2.0 * h).min(curve_ax.end()).max(0.0);
        let back = (-lo / h + 1e-9).floor() as usize;
        let fwd = (hi / h + 1e-9).floor() as usize;
        UniformAxis::new(-(back as f64) * h, h, back + fwd + 1)
    };
    let ua = fine(&g.u, patch.a1().axis())?;
    let va = fine(&g.v, patch.a2().axis())?;
    let w1: Vec<f64> = ua.nodes().map(|u| patch.omega1(u)).collect::<Result<_>>()?;
    let w2: Vec<f64> = va.nodes().map(|v| patch.omega2(v)).collect::<Result<_>>()?;
    coordinate_chart(ua, &w1, va, &w2)
}

/// Largest circulation of the 1-form `P du + Q dv` around the cells of a
/// grid (trapezoid rule on each edge). Zero for gradient fields.
pub fn path_independence_defect(field: &dyn Fn(f64, f64) -> (f64, f64), grid: &Grid) -> f64 {
    let (hu, hv) = (grid.u.step, grid.v.step);
    let mut worst = 0.0f64;
    for i in 0..grid.u.len - 1 {
        for j in 0..grid.v.len - 1 {
            let (u0, u1) = (grid.u.at(i), grid.u.at(i + 1));
            let (v0, v1) = (grid.v.at(j), grid.v.at(j + 1));
            let (p00, q00) = field(u0, v0);
            let (p10, q10) = field(u1, v0);
            let (p11, q11) = field(u1, v1);
            let (p01, q01) = field(u0, v1);
            let circ = 0.5 * hu * (p00 + p10) + 0.5 * hv * (q10 + q11) - 0.5 * hu * (p11 + p01) - 0.5 * hv * (q01 + q00);
            worst = worst.max(circ.abs() / (hu * hv));
        }
    }
    worst
}

/// Reject an angle field whose chart 1-forms are not closed. `omega` gives
/// `(ω₁, ω₂)` at `(u, v)`; separable inputs always pass.
pub fn check_path_independence(omega: &dyn Fn(f64, f64) -> (f64, f64), grid: &Grid, tol: f64) -> Result<f64> {
    let dx = |u: f64, v: f64| {
        let (a, b) = omega(u, v);
        (a.cos(), b.cos())
    };
    let dy = |u: f64, v: f64| {
        let (a, b) = omega(u, v);
        (a.sin(), -b.sin())
    };
    let defect = path_independence_defect(&dx, grid).max(path_independence_defect(&dy, grid));
    if defect > tol {
        return Err(Error::PathDependent { defect });
    }
    Ok(defect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn axis() -> UniformAxis {
        UniformAxis::from_range(-2.0, 2.0, 0.01).unwrap()
    }

    #[test]
    fn right_angles() {
        let a = axis();
        let w = vec![PI / 2.0; a.len];
        let c = coordinate_chart(a, &w, a, &w).unwrap();
        for (u, v) in [(0.5, -1.0), (1.9, 1.9), (-2.0, 0.3)] {
            let (x, y) = c.at(u, v).unwrap();
            assert!(x.abs() < 1e-12);
            assert!((y - (u - v)).abs() < 1e-12);
        }
        assert_eq!(c.at(0.0, 0.0).unwrap(), (0.0, 0.0));
    }

    #[test]
    fn constant_angles() {
        let a = axis();
        let c = coordinate_chart(a, &vec![PI / 3.0; a.len], a, &vec![PI / 6.0; a.len]).unwrap();
        let r3 = 3f64.sqrt() / 2.0;
        let (x, y) = c.at(1.3, -0.7).unwrap();
        assert!((x - (0.5 * 1.3 + r3 * -0.7)).abs() < 1e-12);
        assert!((y - (r3 * 1.3 - 0.5 * -0.7)).abs() < 1e-12);
        assert!(matches!(c.completeness, Completeness::Certified { .. }));
    }

    #[test]
    fn path_dependence_is_flagged() {
        let grid = Grid::square(UniformAxis::from_range(-1.0, 1.0, 0.05).unwrap());
        let ok = |u: f64, v: f64| (1.0 + 0.2 * u.sin(), 0.5 + 0.1 * v);
        assert!(check_path_independence(&ok, &grid, 1e-9).is_ok());
        let bad = |u: f64, v: f64| (1.0 + 0.3 * v, 0.5 + 0.3 * u);
        assert!(matches!(check_path_independence(&bad, &grid, 1e-6), Err(Error::PathDependent { .. })));
    }
}
