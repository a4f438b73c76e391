//! The flat immersion `f(u,v) = a₁(u)·conj(a₂(v))` of the Lorentz plane and
//! its verification.

pub mod chart;
pub mod completeness;
pub mod export;
pub mod forms;
pub mod torus;
pub mod verify;

use std::f64::consts::{PI, TAU};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cliffalg::{AdSPoint, SplitQuat};
use crate::error::{Error, Result};
use crate::lift::{asymptotic_reparametrize, AsymptoticCurve, CurveSource, FnCurve, Reparametrized};
use crate::sampling::UniformAxis;

pub use chart::{coordinate_chart, patch_chart, CoordinateChart};
pub use completeness::{completeness_check, AngleProfile, Completeness, CompletenessOptions};
pub use forms::{closed_forms, forms_from_angles, gauss_weingarten_residual, measured_forms, FormsSample, GwResidual};
pub use torus::{torus_check, TorusRecord};
pub use verify::{verify_patch, Tolerances};

/// Rectangular `(u, v)` lattice.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub u: UniformAxis,
    pub v: UniformAxis,
}

impl Grid {
    pub fn new(u: UniformAxis, v: UniformAxis) -> Self {
        Grid { u, v }
    }

    /// Same axis in both directions.
    pub fn square(axis: UniformAxis) -> Self {
        Grid { u: axis, v: axis }
    }

    /// 201 × 201 nodes over `[−2, 2]²`.
    pub fn verification_default() -> Self {
        Grid::square(UniformAxis::from_range(-2.0, 2.0, 0.02).expect("valid default grid"))
    }

    pub fn len(&self) -> usize {
        self.u.len * self.v.len
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Row-major index: `u` varies slowest.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.v.len + j
    }
}

/// Parse `min:max:step`.
pub fn parse_axis(spec: &str) -> Result<UniformAxis> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(Error::InvalidGrid(format!("expected min:max:step, got `{spec}`")));
    }
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| Error::InvalidGrid(format!("`{s}` is not a number")));
    UniformAxis::from_range(num(parts[0])?, num(parts[1])?, num(parts[2])?)
}

/// Lower bound on `sin(ω₁ + ω₂)` required at every node.
pub const SINE_FLOOR: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatSurfacePatch {
    a1: AsymptoticCurve,
    a2: AsymptoticCurve,
    /// `ω₂ = π − ω^{a₂} + shift2`, with `shift2 ∈ 2πℤ`.
    shift2: f64,
    grid: Grid,
    f: Vec<SplitQuat>,
    n: Vec<SplitQuat>,
}

impl FlatSurfacePatch {
    pub fn a1(&self) -> &AsymptoticCurve {
        &self.a1
    }

    pub fn a2(&self) -> &AsymptoticCurve {
        &self.a2
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// `f` at the grid nodes, row-major.
    pub fn f_nodes(&self) -> &[SplitQuat] {
        &self.f
    }

    /// `N` at the grid nodes, row-major.
    pub fn n_nodes(&self) -> &[SplitQuat] {
        &self.n
    }

    pub fn omega1(&self, u: f64) -> Result<f64> {
        self.a1.omega(u)
    }

    pub fn omega2(&self, v: f64) -> Result<f64> {
        Ok(PI - self.a2.omega(v)? + self.shift2)
    }

    pub fn f_at(&self, u: f64, v: f64) -> Result<SplitQuat> {
        Ok(self.a1.point(u)?.q() * self.a2.point(v)?.q().conj())
    }

    pub fn n_at(&self, u: f64, v: f64) -> Result<SplitQuat> {
        Ok(self.a1.point(u)?.q() * SplitQuat::J * self.a2.point(v)?.q().conj())
    }

    /// Exact partials `(f_u, f_v)` from the curve derivatives.
    pub fn f_partials(&self, u: f64, v: f64) -> Result<(SplitQuat, SplitQuat)> {
        let (a1, d1) = self.a1.eval(u)?;
        let (a2, d2) = self.a2.eval(v)?;
        Ok((d1 * a2.conj(), a1 * d2.conj()))
    }

    /// Parameter values `(u, v)` of node `(i, j)`.
    pub fn node(&self, i: usize, j: usize) -> (f64, f64) {
        (self.grid.u.at(i), self.grid.v.at(j))
    }

    /// Smallest `sin(ω₁ + ω₂)` over the grid.
    pub fn min_sine(&self) -> f64 {
        let w1: Vec<f64> = self.grid.u.nodes().map(|u| self.omega1(u).unwrap_or(f64::NAN)).collect();
        let w2: Vec<f64> = self.grid.v.nodes().map(|v| self.omega2(v).unwrap_or(f64::NAN)).collect();
        w1.iter().flat_map(|a| w2.iter().map(move |b| (a + b).sin())).fold(f64::INFINITY, f64::min)
    }
}

/// Assemble the patch. Both curves must start at 1 and cover the grid.
pub fn synthesize(a1: &AsymptoticCurve, a2: &AsymptoticCurve, grid: &Grid) -> Result<FlatSurfacePatch> {
    for (name, c) in [("a1", a1), ("a2", a2)] {
        let d = (c.point(0.0)?.q() - SplitQuat::ONE).max_abs();
        if d > 1e-9 {
            return Err(Error::Hypothesis(format!("{name}(0) must be 1 (defect {d:e})")));
        }
    }
    let (u0, u1) = a1.domain();
    let (v0, v1) = a2.domain();
    for (axis, lo, hi) in [(&grid.u, u0, u1), (&grid.v, v0, v1)] {
        if axis.start < lo - 1e-12 || axis.end() > hi + 1e-12 {
            return Err(Error::OutOfDomain { at: if axis.start < lo { axis.start } else { axis.end() }, start: lo, end: hi });
        }
    }
    let w1: Vec<f64> = grid.u.nodes().map(|u| a1.omega(u)).collect::<Result<_>>()?;
    let wa2: Vec<f64> = grid.v.nodes().map(|v| a2.omega(v)).collect::<Result<_>>()?;
    let s0 = a1.omega(0.0)? + PI - a2.omega(0.0)?;
    let shift2 = -TAU * (s0 / TAU).floor();
    let w2: Vec<f64> = wa2.iter().map(|w| PI - w + shift2).collect();

    let mut count = 0usize;
    let mut first = None;
    for (i, x) in w1.iter().enumerate() {
        for (j, y) in w2.iter().enumerate() {
            if (x + y).sin() <= SINE_FLOOR {
                count += 1;
                first.get_or_insert((grid.u.at(i), grid.v.at(j)));
            }
        }
    }
    if let Some((u, v)) = first {
        return Err(Error::SinePositivity { count, u, v });
    }

    let p1: Vec<SplitQuat> = grid.u.nodes().map(|u| a1.point(u).map(AdSPoint::q)).collect::<Result<_>>()?;
    let p2: Vec<SplitQuat> = grid.v.nodes().map(|v| a2.point(v).map(|p| p.q().conj())).collect::<Result<_>>()?;
    let rows: Vec<(Vec<SplitQuat>, Vec<SplitQuat>)> = p1
        .par_iter()
        .map(|x| {
            let f = p2.iter().map(|y| *x * *y).collect();
            let n = p2.iter().map(|y| *x * SplitQuat::J * *y).collect();
            (f, n)
        })
        .collect();
    let (mut f, mut n) = (Vec::with_capacity(grid.len()), Vec::with_capacity(grid.len()));
    for (fr, nr) in rows {
        f.extend(fr);
        n.extend(nr);
    }
    Ok(FlatSurfacePatch { a1: a1.clone(), a2: a2.clone(), shift2, grid: *grid, f, n })
}

/// Left-translate and rotate two curves so that `f(0,0) = 1` and `N(0,0) = j`:
/// returns `(conj(a₁(0))·a₁, conj(a₂(0))·a₂)`.
pub fn normalize_curves(a1: &AsymptoticCurve, a2: &AsymptoticCurve) -> Result<(AsymptoticCurve, AsymptoticCurve)> {
    let fix = |c: &AsymptoticCurve| -> Result<AsymptoticCurve> {
        let b = c.point(0.0)?.q().conj();
        let pts = c.points().iter().map(|a| b * *a).collect();
        AsymptoticCurve::from_samples(*c.axis(), pts, c.omega_samples().to_vec(), c.period())
    };
    Ok((fix(a1)?, fix(a2)?))
}

/// Recover the generating curves from the immersion itself:
/// `a₁(u) = f(u, 0)` and `a₂(v) = conj(f(0, v))`, each reparametrized asymptotically.
pub fn boundary_curves(patch: &FlatSurfacePatch, step: f64) -> Result<(Reparametrized, Reparametrized)> {
    let c1 = FnCurve {
        domain: patch.a1.domain(),
        f: |u: f64| {
            let f = patch.f_at(u, 0.0).expect("inside the curve domain");
            let (fu, _) = patch.f_partials(u, 0.0).expect("inside the curve domain");
            (f, fu)
        },
    };
    let c2 = FnCurve {
        domain: patch.a2.domain(),
        f: |v: f64| {
            let f = patch.f_at(0.0, v).expect("inside the curve domain");
            let (_, fv) = patch.f_partials(0.0, v).expect("inside the curve domain");
            (f.conj(), fv.conj())
        },
    };
    Ok((asymptotic_reparametrize(&c1, step)?, asymptotic_reparametrize(&c2, step)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fronts::{make_front_from_curvature, prepare};
    use crate::lift::asymptotic_lift;

    fn lift(w: impl Fn(f64) -> f64) -> AsymptoticCurve {
        let f = make_front_from_curvature(&w, -2.2, 2.2, 1e-3, None).unwrap();
        asymptotic_lift(&prepare(&f).unwrap(), 1).unwrap()
    }

    #[test]
    fn parse_axis_spec() {
        let a = parse_axis("-2:2:0.02").unwrap();
        assert_eq!(a.len, 201);
        assert!(parse_axis("-2:2").is_err());
        assert!(parse_axis("2:-2:0.1").is_err());
        assert!(parse_axis("0:1:0").is_err());
    }

    #[test]
    fn geodesic_pair_is_rejected() {
        let g = lift(|_| PI / 2.0);
        let r = synthesize(&g, &g, &Grid::verification_default());
        assert!(matches!(r, Err(Error::SinePositivity { .. })), "{:?}", r.err());
    }

    #[test]
    fn circle_and_geodesic() {
        let a1 = lift(|_| PI / 3.0);
        let a2 = lift(|_| PI / 2.0);
        let grid = Grid::square(UniformAxis::from_range(-1.0, 1.0, 0.1).unwrap());
        let p = synthesize(&a1, &a2, &grid).unwrap();
        assert_eq!(p.f_at(0.0, 0.0).unwrap(), SplitQuat::ONE);
        assert_eq!(p.n_at(0.0, 0.0).unwrap(), SplitQuat::J);
        assert!((p.omega2(0.3).unwrap() - PI / 2.0).abs() < 1e-12);
        assert!((p.min_sine() - (5.0 * PI / 6.0).sin()).abs() < 1e-12);
    }
}
