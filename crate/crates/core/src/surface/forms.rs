//! First, second and third fundamental forms, measured by central differences
//! and in closed form, plus the Gauss–Weingarten residuals.

use serde::{Deserialize, Serialize};

use crate::cliffalg::{cross, inner, AdSPoint, SplitQuat};
use crate::error::{Error, Result};

use super::FlatSurfacePatch;

/// Coefficients of I = (E, F, G), II = (e, f₂, g), III = (l, m, n) at `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormsSample {
    pub u: f64,
    pub v: f64,
    pub first: [f64; 3],
    pub second: [f64; 3],
    pub third: [f64; 3],
}

impl FormsSample {
    /// Largest coefficient difference per form.
    pub fn diff(&self, other: &FormsSample) -> [f64; 3] {
        let d = |a: &[f64; 3], b: &[f64; 3]| (0..3).map(|k| (a[k] - b[k]).abs()).fold(0.0, f64::max);
        [d(&self.first, &other.first), d(&self.second, &other.second), d(&self.third, &other.third)]
    }

    /// `(e·g − f₂²) + sin²(ω₁ + ω₂)`, which vanishes for these immersions.
    pub fn gauss_defect(&self, omega: f64) -> f64 {
        self.second[0] * self.second[2] - self.second[1] * self.second[1] + omega.sin().powi(2)
    }
}

/// Closed forms in terms of the two angles.
pub fn forms_from_angles(w1: f64, w2: f64) -> ([f64; 3], [f64; 3], [f64; 3]) {
    let c1 = (2.0 * w1).cos();
    let c2 = (2.0 * w2).cos();
    let cd = (w1 - w2).cos();
    ([-c1, -cd, -c2], [0.0, (w1 + w2).sin(), 0.0], [c1, -cd, c2])
}

pub fn closed_forms(omega1: &dyn Fn(f64) -> f64, omega2: &dyn Fn(f64) -> f64, u: f64, v: f64) -> FormsSample {
    let (first, second, third) = forms_from_angles(omega1(u), omega2(v));
    FormsSample { u, v, first, second, third }
}

impl FlatSurfacePatch {
    pub fn closed_forms_at(&self, u: f64, v: f64) -> Result<FormsSample> {
        let (first, second, third) = forms_from_angles(self.omega1(u)?, self.omega2(v)?);
        Ok(FormsSample { u, v, first, second, third })
    }

    fn require_interior(&self, u: f64, v: f64, h: f64) -> Result<()> {
        let g = self.grid();
        let need = 2.0 * h;
        let slack = 1e-9 * h;
        if u - need < g.u.start - slack || u + need > g.u.end() + slack || v - need < g.v.start - slack || v + need > g.v.end() + slack
        {
            return Err(Error::BoundaryProximity { u, v, needed: need });
        }
        Ok(())
    }
}

struct Differences {
    f: SplitQuat,
    n: SplitQuat,
    fu: SplitQuat,
    fv: SplitQuat,
    nu: SplitQuat,
    nv: SplitQuat,
}

fn differences(p: &FlatSurfacePatch, u: f64, v: f64, h: f64) -> Result<Differences> {
    let f = |a, b| p.f_at(a, b);
    let n = |a, b| p.n_at(a, b);
    let c = 0.5 / h;
    Ok(Differences {
        f: f(u, v)?,
        n: n(u, v)?,
        fu: (f(u + h, v)? - f(u - h, v)?) * c,
        fv: (f(u, v + h)? - f(u, v - h)?) * c,
        nu: (n(u + h, v)? - n(u - h, v)?) * c,
        nv: (n(u, v + h)? - n(u, v - h)?) * c,
    })
}

/// Central differences of `f` and `N` with step `h`, assembled into I, II, III.
pub fn measured_forms(p: &FlatSurfacePatch, u: f64, v: f64, h: f64) -> Result<FormsSample> {
    p.require_interior(u, v, h)?;
    let d = differences(p, u, v, h)?;
    Ok(FormsSample {
        u,
        v,
        first: [inner(d.fu, d.fu), inner(d.fu, d.fv), inner(d.fv, d.fv)],
        second: [
            -inner(d.fu, d.nu),
            -0.5 * (inner(d.fu, d.nv) + inner(d.fv, d.nu)),
            -inner(d.fv, d.nv),
        ],
        third: [inner(d.nu, d.nu), inner(d.nu, d.nv), inner(d.nv, d.nv)],
    })
}

/// Residuals of the defining relations of `N`: unit length, orthogonality to
/// `f, f_u, f_v`, and `N = (f_u × f_v)/sin(ω₁ + ω₂)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalResidual {
    pub relations: f64,
    pub identity: f64,
}

fn tangent(f: SplitQuat, x: SplitQuat) -> SplitQuat {
    x + f * inner(x, f)
}

pub fn normal_residual(p: &FlatSurfacePatch, u: f64, v: f64, h: f64) -> Result<NormalResidual> {
    p.require_interior(u, v, h)?;
    let d = differences(p, u, v, h)?;
    let relations = [
        (inner(d.n, d.n) - 1.0).abs(),
        inner(d.n, d.f).abs(),
        inner(d.n, d.fu).abs(),
        inner(d.n, d.fv).abs(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let base = AdSPoint::from_unit(d.f);
    let c = cross(base, tangent(d.f, d.fu), tangent(d.f, d.fv))?;
    let s = (p.omega1(u)? + p.omega2(v)?).sin();
    Ok(NormalResidual { relations, identity: (d.n - c / s).max_abs() })
}

/// `‖N_u − f_u × N‖` and `‖N_v − N × f_v‖`, the left-invariance identities.
pub fn left_invariance_residual(p: &FlatSurfacePatch, u: f64, v: f64, h: f64) -> Result<f64> {
    p.require_interior(u, v, h)?;
    let d = differences(p, u, v, h)?;
    let base = AdSPoint::from_unit(d.f);
    let n = tangent(d.f, d.n);
    let ru = (d.nu - cross(base, tangent(d.f, d.fu), n)?).max_abs();
    let rv = (d.nv - cross(base, n, tangent(d.f, d.fv))?).max_abs();
    Ok(ru.max(rv))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GwResidual {
    pub f_uu: f64,
    pub f_uv: f64,
    pub f_vv: f64,
    pub n_u: f64,
    pub n_v: f64,
}

impl GwResidual {
    pub fn max(&self) -> f64 {
        [self.f_uu, self.f_uv, self.f_vv, self.n_u, self.n_v].into_iter().fold(0.0, f64::max)
    }
}

/// Second derivatives of `f` and first derivatives of `N` by central
/// differences, against the Gauss–Weingarten right-hand sides.
pub fn gauss_weingarten_residual(p: &FlatSurfacePatch, u: f64, v: f64, h: f64) -> Result<GwResidual> {
    p.require_interior(u, v, h)?;
    let d = differences(p, u, v, h)?;
    let f = |a, b| p.f_at(a, b);
    let h2 = h * h;
    let fuu = (f(u + h, v)? - d.f * 2.0 + f(u - h, v)?) / h2;
    let fvv = (f(u, v + h)? - d.f * 2.0 + f(u, v - h)?) / h2;
    let fuv = (f(u + h, v + h)? - f(u + h, v - h)? - f(u - h, v + h)? + f(u - h, v - h)?) / (4.0 * h2);
    let w1 = p.omega1(u)?;
    let w2 = p.omega2(v)?;
    let dw1 = (p.omega1(u + h)? - p.omega1(u - h)?) / (2.0 * h);
    let dw2 = (p.omega2(v + h)? - p.omega2(v - h)?) / (2.0 * h);
    let w = w1 + w2;
    let (sw, cw) = w.sin_cos();
    let c1 = (2.0 * w1).cos();
    let c2 = (2.0 * w2).cos();
    let cd = (w1 - w2).cos();
    let rhs_uu = d.fu * (dw1 * cw / sw) - d.fv * (dw1 / sw) - d.f * c1;
    let rhs_vv = d.fv * (dw2 * cw / sw) - d.fu * (dw2 / sw) - d.f * c2;
    let rhs_uv = d.n * sw - d.f * cd;
    let rhs_nu = d.fu * (cd / sw) - d.fv * (c1 / sw);
    let rhs_nv = d.fv * (cd / sw) - d.fu * (c2 / sw);
    Ok(GwResidual {
        f_uu: (fuu - rhs_uu).max_abs(),
        f_uv: (fuv - rhs_uv).max_abs(),
        f_vv: (fvv - rhs_vv).max_abs(),
        n_u: (d.nu - rhs_nu).max_abs(),
        n_v: (d.nv - rhs_nv).max_abs(),
    })
}
