//! JSON front specifications.
//!
//! ```json
//! { "schema": 1, "kind": "constant-curvature", "k": 3.0 }
//! { "schema": 1, "kind": "sinusoidal-angle", "base": 0.6, "amplitude": 0.2, "frequency": 1.0 }
//! { "schema": 1, "kind": "sinusoidal-curvature", "base": 2.75, "amplitude": 0.25 }
//! { "schema": 1, "kind": "angle-samples", "samples": [{"s": -3.0, "omega": 0.5}, ...] }
//! { "schema": 1, "kind": "parallel-of", "base": { ... }, "distance": 0.3 }
//! { "schema": 1, "kind": "preset", "name": "q2-first", "c0": 0.99 }
//! ```
//!
//! `domain` (default `[-r, r]` for the requested reach `r`) and `step`
//! (default 1e-3) are optional on every kind.

use std::f64::consts::FRAC_PI_2;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fronts::{acot, circle_period, front_from_angle_samples, make_front_from_curvature, parallel_front, AngleSample, FrontCurve};
use crate::gallery::{q2_omega1, CURVE_STEP};

pub const CURVE_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub schema: u32,
    #[serde(flatten)]
    pub kind: CurveKind,
    #[serde(default)]
    pub domain: Option<(f64, f64)>,
    #[serde(default)]
    pub step: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CurveKind {
    ConstantCurvature {
        k: f64,
    },
    /// `ω(s) = base + amplitude·sin(frequency·s + phase)`.
    SinusoidalAngle {
        base: f64,
        amplitude: f64,
        #[serde(default = "one")]
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `k(s) = base + amplitude·sin(frequency·s + phase)`, `ω = cot⁻¹ k`.
    SinusoidalCurvature {
        base: f64,
        amplitude: f64,
        #[serde(default = "one")]
        frequency: f64,
        #[serde(default)]
        phase: f64,
    },
    AngleSamples {
        samples: Vec<AngleSample>,
        #[serde(default)]
        period: Option<f64>,
    },
    ParallelOf {
        base: Box<CurveSpec>,
        distance: f64,
    },
    Preset {
        name: String,
        #[serde(default)]
        c0: Option<f64>,
    },
}

fn one() -> f64 {
    1.0
}

pub const PRESETS: [&str; 4] = ["q2-first", "q2-second", "geodesic", "wavy-cusp"];

impl CurveSpec {
    pub fn new(kind: CurveKind) -> Self {
        CurveSpec { schema: CURVE_SCHEMA, kind, domain: None, step: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CurveSpec = serde_json::from_str(text)?;
        if spec.schema != CURVE_SCHEMA {
            return Err(Error::Spec(format!("schema: expected {CURVE_SCHEMA}, got {}", spec.schema)));
        }
        Ok(spec)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        CurveSpec::from_json(&text).map_err(|e| match e {
            Error::Json(j) => Error::Spec(format!("{}: {j}", path.display())),
            other => other,
        })
    }

    /// Build the front on `domain`, or on `[-r, r]` when none is given.
    pub fn build(&self, r: f64) -> Result<FrontCurve> {
        let step = self.step.unwrap_or(CURVE_STEP);
        if !(step > 0.0) {
            return Err(Error::Spec(format!("step must be positive, got {step}")));
        }
        let (lo, hi) = self.domain.unwrap_or((-r, r));
        if !(lo <= 0.0 && hi > 0.0) {
            return Err(Error::Spec(format!("domain [{lo}, {hi}] must contain 0 in its interior or at its start")));
        }
        match &self.kind {
            CurveKind::ConstantCurvature { k } => {
                let w0 = acot(*k);
                let period = circle_period(*k);
                let hi = period.map_or(hi, |l| hi.max(l + 0.1));
                make_front_from_curvature(&move |_| w0, lo, hi, step, period)
            }
            &CurveKind::SinusoidalAngle { base, amplitude, frequency, phase } => {
                make_front_from_curvature(&move |s| base + amplitude * (frequency * s + phase).sin(), lo, hi, step, None)
            }
            &CurveKind::SinusoidalCurvature { base, amplitude, frequency, phase } => {
                make_front_from_curvature(&move |s| acot(base + amplitude * (frequency * s + phase).sin()), lo, hi, step, None)
            }
            CurveKind::AngleSamples { samples, period } => front_from_angle_samples(samples, step, *period),
            CurveKind::ParallelOf { base, distance } => Ok(parallel_front(&base.build(r)?, *distance)),
            CurveKind::Preset { name, c0 } => {
                let c0 = c0.unwrap_or(0.99);
                let w1 = q2_omega1(c0);
                match name.as_str() {
                    "q2-first" => make_front_from_curvature(&w1, lo, hi, step, None),
                    "q2-second" => make_front_from_curvature(&move |v| FRAC_PI_2 - w1(v), lo, hi, step, None),
                    "geodesic" => make_front_from_curvature(&|_| FRAC_PI_2, lo, hi, step, None),
                    "wavy-cusp" => {
                        let base = make_front_from_curvature(&|s| 0.4 + 0.2 * s.sin(), lo, hi, step, None)?;
                        Ok(parallel_front(&base, 0.4f64.tan().atanh()))
                    }
                    other => Err(Error::Spec(format!("unknown preset `{other}`; known: {}", PRESETS.join(", ")))),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let s = CurveSpec::from_json(r#"{"schema":1,"kind":"constant-curvature","k":3.0}"#).unwrap();
        let f = s.build(2.2).unwrap();
        assert!(f.period().is_some());
        let s = CurveSpec::from_json(r#"{"schema":1,"kind":"sinusoidal-angle","base":0.6,"amplitude":0.2,"domain":[-1,1]}"#).unwrap();
        assert_eq!(s.build(5.0).unwrap().domain(), (-1.0, 1.0));
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(CurveSpec::from_json(r#"{"schema":2,"kind":"constant-curvature","k":3.0}"#).is_err());
        assert!(CurveSpec::from_json(r#"{"schema":1,"kind":"spiral"}"#).is_err());
        let s = CurveSpec::from_json(r#"{"schema":1,"kind":"preset","name":"nope"}"#).unwrap();
        assert!(matches!(s.build(1.0), Err(Error::Spec(_))));
    }

    #[test]
    fn round_trips_through_json() {
        let s = CurveSpec::new(CurveKind::ParallelOf { base: Box::new(CurveSpec::new(CurveKind::ConstantCurvature { k: 2.0 })), distance: 0.1 });
        let back = CurveSpec::from_json(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(s, back);
    }
}
