//! Hopf fibrations `h_ρ(z) = z ρ z̄` of H³₁ and the double cover onto the unit
//! tangent bundle of the hyperbolic plane.

use serde::{Deserialize, Serialize};

use crate::cliffalg::{exp_fiber, inner, AdSPoint, SplitQuat, AXIS_NORM_TOL};
use crate::error::{Error, Result};

/// Base manifold of a Hopf fibration.
///
/// The `Plus` components are the ones with `⟨x, i⟩ < 0`, so that `i` itself
/// lies in `H²⁺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseManifold {
    DeSitter,
    HyperbolicPlus,
    HyperbolicMinus,
    LightConePlus,
    LightConeMinus,
}

/// A nonzero pure imaginary fiber axis, normalized to `⟨ρ,ρ⟩ ∈ {-1, 0, 1}`.
/// Lightlike axes are scaled so that `|⟨ρ, i⟩| = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopfAxis {
    rho: SplitQuat,
    norm_class: i8,
}

impl HopfAxis {
    /// Normalize an arbitrary nonzero pure imaginary element into an axis.
    pub fn new(rho: SplitQuat) -> Result<Self> {
        if rho.re.abs() > AXIS_NORM_TOL * rho.euclid_norm().max(1.0) {
            return Err(Error::NotPureImaginary { re: rho.re });
        }
        let rho = rho.imag_part();
        let e = rho.euclid_norm();
        if e == 0.0 || !e.is_finite() {
            return Err(Error::ZeroAxis);
        }
        let q = rho.norm_sq();
        if q.abs() <= 1e-12 * e * e {
            // ⟨ρ,ρ⟩ = 0 forces |ρ_i| = |(ρ_j, ρ_k)| > 0
            let ri = inner(rho, SplitQuat::I).abs();
            Ok(HopfAxis { rho: rho / ri, norm_class: 0 })
        } else if q < 0.0 {
            Ok(HopfAxis { rho: rho / (-q).sqrt(), norm_class: -1 })
        } else {
            Ok(HopfAxis { rho: rho / q.sqrt(), norm_class: 1 })
        }
    }

    pub fn i() -> Self {
        HopfAxis { rho: SplitQuat::I, norm_class: -1 }
    }

    pub fn rho(&self) -> SplitQuat {
        self.rho
    }

    /// `⟨ρ, ρ⟩` after normalization.
    pub fn norm_class(&self) -> i8 {
        self.norm_class
    }
}

/// A point `(γ, ν)` of the unit tangent bundle of H².
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LegendrianPoint {
    pub gamma: SplitQuat,
    pub nu: SplitQuat,
}

impl LegendrianPoint {
    /// Largest violation of the bundle relations.
    pub fn residual(&self) -> f64 {
        let g = self.gamma;
        let n = self.nu;
        [
            (g.norm_sq() + 1.0).abs(),
            g.re.abs(),
            (n.norm_sq() - 1.0).abs(),
            n.re.abs(),
            inner(g, n).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `h_ρ(z) = z ρ z̄`.
pub fn hopf_map(axis: &HopfAxis, z: AdSPoint) -> SplitQuat {
    let q = z.q();
    q * axis.rho * q.conj()
}

/// The fixed fibration `h = h_i` onto H².
pub fn h(z: AdSPoint) -> SplitQuat {
    let q = z.q();
    q * SplitQuat::I * q.conj()
}

/// `π(z) = (z i z̄, z k z̄)`, two-to-one with `π(-z) = π(z)`.
pub fn double_cover(z: AdSPoint) -> LegendrianPoint {
    let q = z.q();
    let qc = q.conj();
    LegendrianPoint { gamma: q * SplitQuat::I * qc, nu: q * SplitQuat::K * qc }
}

pub fn classify_base(axis: &HopfAxis) -> BaseManifold {
    let side = inner(axis.rho, SplitQuat::I);
    match axis.norm_class {
        1 => BaseManifold::DeSitter,
        -1 if side < 0.0 => BaseManifold::HyperbolicPlus,
        -1 => BaseManifold::HyperbolicMinus,
        _ if side < 0.0 => BaseManifold::LightConePlus,
        _ => BaseManifold::LightConeMinus,
    }
}

/// `z0 · e^{tρ}`, the fiber of `h_ρ` through `z0`.
pub fn fiber(axis: &HopfAxis, z0: AdSPoint, t: f64) -> AdSPoint {
    let e = exp_fiber(axis.rho, t).expect("axis is normalized on construction");
    AdSPoint::from_unit(z0.q() * e)
}

/// A point `a` of H³₁ with `π(a) = (gamma, nu)`. The other preimage is `-a`.
///
/// `a` is the common fixed point of `x ↦ -γ x i`, `x ↦ ν x k` and `x ↦ t x j`
/// with `t = ν γ`; averaging the four group elements projects onto it.
pub fn lift_point(p: &LegendrianPoint) -> Result<AdSPoint> {
    let g = p.gamma;
    let n = p.nu;
    let t = n * g;
    let project = |x: SplitQuat| (x - g * x * SplitQuat::I + n * x * SplitQuat::K + t * x * SplitQuat::J) * 0.25;
    let best = [SplitQuat::ONE, SplitQuat::I, SplitQuat::J, SplitQuat::K]
        .into_iter()
        .map(project)
        .max_by(|a, b| (*a * a.conj()).re.abs().total_cmp(&(*b * b.conj()).re.abs()))
        .expect("four candidates");
    AdSPoint::new(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cliffalg::exp_fiber;
    use approx::assert_abs_diff_eq;

    const I: SplitQuat = SplitQuat::I;
    const J: SplitQuat = SplitQuat::J;
    const K: SplitQuat = SplitQuat::K;

    #[test]
    fn identity_maps() {
        assert_eq!(hopf_map(&HopfAxis::i(), AdSPoint::IDENTITY), I);
        let p = double_cover(AdSPoint::IDENTITY);
        assert_eq!((p.gamma, p.nu), (I, K));
        let m = double_cover(AdSPoint::IDENTITY.neg());
        assert_eq!((m.gamma, m.nu), (I, K));
    }

    #[test]
    fn fiber_is_invariant_under_own_map() {
        let z0 = AdSPoint::new(SplitQuat::new(1.1, -0.3, 0.4, 0.2)).unwrap();
        let axis = HopfAxis::i();
        for t in [0.0, 0.3, -2.0, 5.0] {
            let e = AdSPoint::new(exp_fiber(I, t).unwrap()).unwrap();
            assert_abs_diff_eq!((hopf_map(&axis, e) - I).max_abs(), 0.0, epsilon = 1e-15);
            let r = hopf_map(&axis, fiber(&axis, z0, t)) - hopf_map(&axis, z0);
            assert!(r.max_abs() <= 1e-10);
        }
        assert_eq!(fiber(&axis, AdSPoint::IDENTITY, 0.0), AdSPoint::IDENTITY);
        let closed = fiber(&axis, AdSPoint::IDENTITY, 2.0 * std::f64::consts::PI);
        assert_abs_diff_eq!((closed.q() - SplitQuat::ONE).max_abs(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn double_cover_of_j_fiber() {
        // expanding (cosh t + sinh t j) i (cosh t - sinh t j) by hand
        for t in [-0.8, 0.25, 1.5] {
            let z = AdSPoint::new(exp_fiber(J, t).unwrap()).unwrap();
            let p = double_cover(z);
            let (c, s) = ((2.0 * t).cosh(), (2.0 * t).sinh());
            assert_abs_diff_eq!((p.gamma - (I * c - K * s)).max_abs(), 0.0, epsilon = 1e-12);
            assert_abs_diff_eq!((p.nu - (K * c - I * s)).max_abs(), 0.0, epsilon = 1e-12);
            assert!(p.residual() < 1e-12);
        }
    }

    #[test]
    fn base_classification() {
        assert_eq!(classify_base(&HopfAxis::i()), BaseManifold::HyperbolicPlus);
        assert_eq!(classify_base(&HopfAxis::new(-I).unwrap()), BaseManifold::HyperbolicMinus);
        assert_eq!(classify_base(&HopfAxis::new(J).unwrap()), BaseManifold::DeSitter);
        let l = HopfAxis::new(I + K).unwrap();
        assert_eq!(l.norm_class(), 0);
        assert_eq!(inner(l.rho(), I), -1.0);
        assert_eq!(classify_base(&l), BaseManifold::LightConePlus);
        assert_eq!(classify_base(&HopfAxis::new((I + K) * -3.0).unwrap()), BaseManifold::LightConeMinus);
    }

    #[test]
    fn axis_normalization() {
        let a = HopfAxis::new(I * 3.0).unwrap();
        assert_eq!(a.rho(), I);
        assert_eq!(a.norm_class(), -1);
        let b = HopfAxis::new(SplitQuat::imag(0.0, 3.0, 4.0)).unwrap();
        assert_abs_diff_eq!(b.rho().norm_sq(), 1.0, epsilon = 1e-15);
        assert!(HopfAxis::new(SplitQuat::ZERO).is_err());
        assert!(HopfAxis::new(SplitQuat::ONE + I).is_err());
    }

    #[test]
    fn lift_point_inverts_double_cover() {
        let z = AdSPoint::new(SplitQuat::new(0.7, 1.2, -0.4, 0.9)).unwrap();
        let a = lift_point(&double_cover(z)).unwrap();
        let d = (a.q() - z.q()).max_abs().min((a.q() + z.q()).max_abs());
        assert!(d < 1e-12, "{d}");
        let p = LegendrianPoint { gamma: I, nu: -K };
        let a = lift_point(&p).unwrap();
        assert!((a.q() - I).max_abs().min((a.q() + I).max_abs()) < 1e-15);
    }

    #[test]
    fn nearly_null_axis_has_fibers() {
        // ⟨ρ,ρ⟩ ≈ −4e-4 against |ρ|² ≈ 5.4: normalizing amplifies rounding
        let axis = HopfAxis::new(SplitQuat::imag(-1.639991632056685, 1.6374446779537275, -0.08910276783308)).unwrap();
        assert_eq!(axis.norm_class(), -1);
        let z = fiber(&axis, AdSPoint::IDENTITY, 0.3);
        assert!(z.quadric_residual() < 1e-9);
    }
}
