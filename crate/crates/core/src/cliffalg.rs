//! Pseudo-quaternion arithmetic on ℝ⁴₂ and the group structure of H³₁.
//!
//! Elements are written `a + b·i + c·j + d·k` with the product table
//!
//! ```text
//!   i² = -1   ij =  k   ik = -j
//!   ji = -k   j² =  1   jk = -i
//!   ki =  j   kj =  i   k² =  1
//! ```
//!
//! and the metric `-dx0² - dx1² + dx2² + dx3²`, so that `⟨z, w⟩ = -Re(z·w̄)`.
//! Anti-de Sitter space is the quadric `⟨z, z⟩ = -1`, equivalently `z·z̄ = 1`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Absolute tolerance on inner products used by [`cross`] to decide tangency.
pub const TANGENCY_TOL: f64 = 1e-9;

/// Tolerance used when validating that a fiber axis has normalized length.
pub const AXIS_NORM_TOL: f64 = 1e-12;

/// An element `re + i_c·i + j_c·j + k_c·k` of ℝ⁴₂.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SplitQuat {
    pub re: f64,
    pub i_c: f64,
    pub j_c: f64,
    pub k_c: f64,
}

impl SplitQuat {
    pub const ZERO: SplitQuat = SplitQuat::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: SplitQuat = SplitQuat::new(1.0, 0.0, 0.0, 0.0);
    pub const I: SplitQuat = SplitQuat::new(0.0, 1.0, 0.0, 0.0);
    pub const J: SplitQuat = SplitQuat::new(0.0, 0.0, 1.0, 0.0);
    pub const K: SplitQuat = SplitQuat::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(re: f64, i_c: f64, j_c: f64, k_c: f64) -> Self {
        SplitQuat { re, i_c, j_c, k_c }
    }

    pub const fn real(re: f64) -> Self {
        SplitQuat::new(re, 0.0, 0.0, 0.0)
    }

    /// Pure imaginary element `b·i + c·j + d·k`.
    pub const fn imag(i_c: f64, j_c: f64, k_c: f64) -> Self {
        SplitQuat::new(0.0, i_c, j_c, k_c)
    }

    pub fn from_array(c: [f64; 4]) -> Self {
        SplitQuat::new(c[0], c[1], c[2], c[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.re, self.i_c, self.j_c, self.k_c]
    }

    pub fn conj(self) -> Self {
        conj(self)
    }

    pub fn inner(self, other: SplitQuat) -> f64 {
        inner(self, other)
    }

    /// `⟨z, z⟩`; negative for timelike, positive for spacelike vectors.
    pub fn norm_sq(self) -> f64 {
        inner(self, self)
    }

    /// Euclidean length of the coordinate vector. Used for residuals only.
    pub fn euclid_norm(self) -> f64 {
        (self.re * self.re + self.i_c * self.i_c + self.j_c * self.j_c + self.k_c * self.k_c).sqrt()
    }

    /// Largest absolute coordinate.
    pub fn max_abs(self) -> f64 {
        self.re.abs().max(self.i_c.abs()).max(self.j_c.abs()).max(self.k_c.abs())
    }

    pub fn imag_part(self) -> Self {
        SplitQuat::new(0.0, self.i_c, self.j_c, self.k_c)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.i_c.is_finite() && self.j_c.is_finite() && self.k_c.is_finite()
    }

    pub fn scale(self, s: f64) -> Self {
        SplitQuat::new(self.re * s, self.i_c * s, self.j_c * s, self.k_c * s)
    }
}

impl fmt::Display for SplitQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:+}i {:+}j {:+}k", self.re, self.i_c, self.j_c, self.k_c)
    }
}

/// Product in ℝ⁴₂ following the table in the module docs.
pub fn mul(a: SplitQuat, b: SplitQuat) -> SplitQuat {
    SplitQuat {
        re: a.re * b.re - a.i_c * b.i_c + a.j_c * b.j_c + a.k_c * b.k_c,
        i_c: a.re * b.i_c + a.i_c * b.re - a.j_c * b.k_c + a.k_c * b.j_c,
        j_c: a.re * b.j_c + a.j_c * b.re - a.i_c * b.k_c + a.k_c * b.i_c,
        k_c: a.re * b.k_c + a.k_c * b.re + a.i_c * b.j_c - a.j_c * b.i_c,
    }
}

pub fn conj(z: SplitQuat) -> SplitQuat {
    SplitQuat::new(z.re, -z.i_c, -z.j_c, -z.k_c)
}

/// `⟨z1, z2⟩ = -x0·y0 - x1·y1 + x2·y2 + x3·y3`.
pub fn inner(a: SplitQuat, b: SplitQuat) -> f64 {
    -a.re * b.re - a.i_c * b.i_c + a.j_c * b.j_c + a.k_c * b.k_c
}

impl Mul for SplitQuat {
    type Output = SplitQuat;
    fn mul(self, rhs: SplitQuat) -> SplitQuat {
        mul(self, rhs)
    }
}

impl Mul<f64> for SplitQuat {
    type Output = SplitQuat;
    fn mul(self, rhs: f64) -> SplitQuat {
        self.scale(rhs)
    }
}

impl Mul<SplitQuat> for f64 {
    type Output = SplitQuat;
    fn mul(self, rhs: SplitQuat) -> SplitQuat {
        rhs.scale(self)
    }
}

impl Div<f64> for SplitQuat {
    type Output = SplitQuat;
    fn div(self, rhs: f64) -> SplitQuat {
        self.scale(1.0 / rhs)
    }
}

impl Add for SplitQuat {
    type Output = SplitQuat;
    fn add(self, r: SplitQuat) -> SplitQuat {
        SplitQuat::new(self.re + r.re, self.i_c + r.i_c, self.j_c + r.j_c, self.k_c + r.k_c)
    }
}

impl Sub for SplitQuat {
    type Output = SplitQuat;
    fn sub(self, r: SplitQuat) -> SplitQuat {
        SplitQuat::new(self.re - r.re, self.i_c - r.i_c, self.j_c - r.j_c, self.k_c - r.k_c)
    }
}

impl AddAssign for SplitQuat {
    fn add_assign(&mut self, r: SplitQuat) {
        *self = *self + r;
    }
}

impl SubAssign for SplitQuat {
    fn sub_assign(&mut self, r: SplitQuat) {
        *self = *self - r;
    }
}

impl Neg for SplitQuat {
    type Output = SplitQuat;
    fn neg(self) -> SplitQuat {
        SplitQuat::new(-self.re, -self.i_c, -self.j_c, -self.k_c)
    }
}

/// Causal character of a vector of ℝ⁴₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalClass {
    Timelike,
    Lightlike,
    Spacelike,
}

/// Classify `v` by the sign of `⟨v, v⟩`; `|⟨v, v⟩| ≤ tol` counts as lightlike.
pub fn causal_character(v: SplitQuat, tol: f64) -> CausalClass {
    classify_sign(v.norm_sq(), tol)
}

pub(crate) fn classify_sign(q: f64, tol: f64) -> CausalClass {
    if q.abs() <= tol {
        CausalClass::Lightlike
    } else if q < 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Spacelike
    }
}

/// A point of H³₁, kept on the quadric `z·z̄ = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SplitQuat", into = "SplitQuat")]
pub struct AdSPoint(SplitQuat);

impl AdSPoint {
    pub const IDENTITY: AdSPoint = AdSPoint(SplitQuat::ONE);

    /// Project `q` onto H³₁ by `q / sqrt(Re(q·q̄))`. Fails when `Re(q·q̄) ≤ 0`.
    pub fn new(q: SplitQuat) -> Result<Self> {
        let n = (q * q.conj()).re;
        if !(n > 0.0) || !q.is_finite() {
            return Err(Error::OffQuadric { value: n });
        }
        Ok(AdSPoint(q / n.sqrt()))
    }

    /// Wrap without renormalizing. Callers guarantee `q·q̄ = 1` to rounding.
    pub(crate) fn from_unit(q: SplitQuat) -> Self {
        AdSPoint(q)
    }

    pub fn q(self) -> SplitQuat {
        self.0
    }

    pub fn conj(self) -> AdSPoint {
        AdSPoint(self.0.conj())
    }

    /// Group product; the quadric is closed under multiplication.
    pub fn compose(self, other: AdSPoint) -> AdSPoint {
        AdSPoint(self.0 * other.0)
    }

    pub fn neg(self) -> AdSPoint {
        AdSPoint(-self.0)
    }

    /// `|⟨z, z⟩ + 1|`.
    pub fn quadric_residual(self) -> f64 {
        (self.0.norm_sq() + 1.0).abs()
    }
}

impl TryFrom<SplitQuat> for AdSPoint {
    type Error = Error;
    fn try_from(q: SplitQuat) -> Result<Self> {
        AdSPoint::new(q)
    }
}

impl From<AdSPoint> for SplitQuat {
    fn from(p: AdSPoint) -> SplitQuat {
        p.0
    }
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let minor = |r: usize, c: usize| -> f64 {
        let mut s = [[0.0; 3]; 3];
        let mut ri = 0;
        for (row_idx, row) in m.iter().enumerate() {
            if row_idx == r {
                continue;
            }
            let mut ci = 0;
            for (col_idx, &val) in row.iter().enumerate() {
                if col_idx == c {
                    continue;
                }
                s[ri][ci] = val;
                ci += 1;
            }
            ri += 1;
        }
        s[0][0] * (s[1][1] * s[2][2] - s[1][2] * s[2][1]) - s[0][1] * (s[1][0] * s[2][2] - s[1][2] * s[2][0])
            + s[0][2] * (s[1][0] * s[2][1] - s[1][1] * s[2][0])
    };
    (0..4).map(|c| if c % 2 == 0 { 1.0 } else { -1.0 } * m[0][c] * minor(0, c)).sum()
}

/// Cross product on `T_base H³₁`: the tangent vector with
/// `⟨u×v, w⟩ = det(base, u, v, w)` for every tangent `w`.
///
/// At the identity this gives `i×j = k`, `k×i = j` and `j×k = -i`; the sign of
/// the last one is forced by the determinant identity since `⟨i, i⟩ = -1`.
pub fn cross(base: AdSPoint, u: SplitQuat, v: SplitQuat) -> Result<SplitQuat> {
    let z = base.q();
    for (name, w) in [("u", u), ("v", v)] {
        let r = inner(z, w);
        if r.abs() > TANGENCY_TOL {
            return Err(Error::NotTangent { which: name, residual: r });
        }
    }
    let rows = [z.to_array(), u.to_array(), v.to_array()];
    let mut cof = [0.0; 4];
    for (m, c) in cof.iter_mut().enumerate() {
        let mut e = [0.0; 4];
        e[m] = 1.0;
        *c = det4([rows[0], rows[1], rows[2], e]);
    }
    // raise the index with the metric diag(-1, -1, 1, 1)
    Ok(SplitQuat::new(-cof[0], -cof[1], cof[2], cof[3]))
}

/// One-parameter subgroup `exp(t·ρ)` for any pure imaginary `ρ` (not necessarily normalized).
pub fn exp_imag(rho: SplitQuat, t: f64) -> SplitQuat {
    // ρ² = ⟨ρ, ρ⟩ for pure imaginary ρ
    let q = rho.norm_sq();
    let scale = rho.euclid_norm().max(1.0);
    if q.abs() <= 1e-14 * scale * scale {
        SplitQuat::ONE + rho * t
    } else if q > 0.0 {
        let r = q.sqrt();
        SplitQuat::real((r * t).cosh()) + rho * ((r * t).sinh() / r)
    } else {
        let r = (-q).sqrt();
        SplitQuat::real((r * t).cos()) + rho * ((r * t).sin() / r)
    }
}

/// Fiber exponential `e^{tρ}` for a normalized pure imaginary axis:
/// `cosh t + sinh t·ρ` (⟨ρ,ρ⟩ = 1), `cos t + sin t·ρ` (⟨ρ,ρ⟩ = -1) or `1 + tρ` (⟨ρ,ρ⟩ = 0).
pub fn exp_fiber(rho: SplitQuat, t: f64) -> Result<SplitQuat> {
    if rho.re.abs() > AXIS_NORM_TOL {
        return Err(Error::NotPureImaginary { re: rho.re });
    }
    let q = rho.norm_sq();
    // rounding in ⟨ρ,ρ⟩ grows with |ρ|², which is large for nearly null axes
    let tol = AXIS_NORM_TOL * rho.euclid_norm().powi(2).max(1.0);
    let out = if (q - 1.0).abs() <= tol {
        SplitQuat::real(t.cosh()) + rho * t.sinh()
    } else if (q + 1.0).abs() <= tol {
        SplitQuat::real(t.cos()) + rho * t.sin()
    } else if q.abs() <= tol {
        SplitQuat::ONE + rho * t
    } else {
        return Err(Error::UnnormalizedAxis { norm_sq: q });
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const I: SplitQuat = SplitQuat::I;
    const J: SplitQuat = SplitQuat::J;
    const K: SplitQuat = SplitQuat::K;
    const ONE: SplitQuat = SplitQuat::ONE;

    #[test]
    fn table() {
        assert_eq!(I * I, -ONE);
        assert_eq!(J * J, ONE);
        assert_eq!(K * K, ONE);
        assert_eq!(I * J, K);
        assert_eq!(J * I, -K);
        assert_eq!(I * K, -J);
        assert_eq!(K * I, J);
        assert_eq!(J * K, -I);
        assert_eq!(K * J, I);
    }

    #[test]
    fn mul_examples() {
        let z = SplitQuat::new(0.3, -1.2, 2.0, 0.7);
        assert_eq!(ONE * z, z);
        assert_eq!(z * ONE, z);
        assert_eq!((ONE + I) * (ONE + J), SplitQuat::new(1.0, 1.0, 1.0, 1.0));
    }

    #[test]
    fn conj_examples() {
        assert_eq!(conj(I), -I);
        assert_eq!(conj(ONE), ONE);
        let lhs = conj((ONE + I) * (ONE + J));
        assert_eq!(lhs, conj(ONE + J) * conj(ONE + I));
        assert_eq!(lhs, SplitQuat::new(1.0, -1.0, -1.0, -1.0));
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(I, I), -1.0);
        assert_eq!(inner(J, K), 0.0);
        assert_eq!(inner(ONE + J, ONE - J), -2.0);
        let a = SplitQuat::new(0.4, 1.0, -2.0, 3.0);
        let b = SplitQuat::new(-1.5, 0.2, 0.9, 1.1);
        assert_abs_diff_eq!(inner(a, b), -(a * b.conj()).re, epsilon = 1e-15);
    }

    #[test]
    fn causal_examples() {
        assert_eq!(causal_character(I, 1e-12), CausalClass::Timelike);
        assert_eq!(causal_character(J, 1e-12), CausalClass::Spacelike);
        assert_eq!(causal_character(I + K, 1e-12), CausalClass::Lightlike);
    }

    #[test]
    fn cross_at_identity() {
        let e = AdSPoint::IDENTITY;
        assert_eq!(cross(e, I, J).unwrap(), K);
        assert_eq!(cross(e, K, I).unwrap(), J);
        assert_eq!(cross(e, J, K).unwrap(), -I);
        assert_eq!(cross(e, I, I).unwrap(), SplitQuat::ZERO);
    }

    #[test]
    fn cross_rejects_non_tangent() {
        let e = AdSPoint::IDENTITY;
        assert!(matches!(cross(e, ONE, J), Err(Error::NotTangent { which: "u", .. })));
        assert!(matches!(cross(e, J, ONE + K), Err(Error::NotTangent { which: "v", .. })));
    }

    #[test]
    fn cross_determinant_identity_off_identity() {
        let z = AdSPoint::new(SplitQuat::new(1.3, 0.2, 0.5, -0.6)).unwrap();
        let zq = z.q();
        let u = zq * SplitQuat::imag(0.3, 1.0, -0.2);
        let v = zq * SplitQuat::imag(-0.7, 0.1, 0.8);
        let c = cross(z, u, v).unwrap();
        assert_abs_diff_eq!(inner(c, zq), 0.0, epsilon = 1e-12);
        for w in [zq * I, zq * J, zq * K] {
            let d = det4([zq.to_array(), u.to_array(), v.to_array(), w.to_array()]);
            assert_abs_diff_eq!(inner(c, w), d, epsilon = 1e-12);
        }
    }

    #[test]
    fn exp_fiber_examples() {
        let e = exp_fiber(I, std::f64::consts::FRAC_PI_2).unwrap();
        assert_abs_diff_eq!((e - I).max_abs(), 0.0, epsilon = 1e-15);
        assert_eq!(exp_fiber(J, 0.0).unwrap(), ONE);
        let t = 0.7;
        let n = exp_fiber(I + K, t).unwrap();
        assert_eq!(n, ONE + (I + K) * t);
        assert_abs_diff_eq!(n.norm_sq(), -1.0, epsilon = 1e-15);
    }

    #[test]
    fn exp_fiber_rejects_bad_axes() {
        assert!(matches!(exp_fiber(ONE + I, 1.0), Err(Error::NotPureImaginary { .. })));
        assert!(matches!(exp_fiber(I * 2.0, 1.0), Err(Error::UnnormalizedAxis { .. })));
    }

    #[test]
    fn exp_imag_matches_fiber_when_normalized() {
        for rho in [I, J, K, I + K, SplitQuat::imag(2f64.sqrt(), 0.0, 1.0)] {
            for t in [-1.3, 0.0, 0.4, 2.5] {
                let a = exp_imag(rho, t);
                let b = exp_fiber(rho, t).unwrap();
                assert_abs_diff_eq!((a - b).max_abs(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn adspoint_normalizes_and_rejects() {
        let p = AdSPoint::new(SplitQuat::new(2.0, 0.0, 0.0, 0.0)).unwrap();
        assert_eq!(p.q(), ONE);
        assert!(AdSPoint::new(J).is_err());
        assert!(AdSPoint::new(SplitQuat::ZERO).is_err());
        let q = AdSPoint::new(SplitQuat::new(0.9, 0.8, 0.4, -0.3)).unwrap();
        assert!(q.quadric_residual() < 1e-15);
    }
}
