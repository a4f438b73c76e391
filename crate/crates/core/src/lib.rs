//! Flat Lorentzian surfaces in anti-de Sitter 3-space built from pairs of
//! wave fronts in the hyperbolic plane.
//!
//! The pipeline runs front → asymptotic lift → surface `f(u,v) = a₁(u)·conj(a₂(v))`,
//! with numerical verification of every identity along the way.

pub mod cliffalg;
pub mod curvespec;
pub mod error;
pub mod fronts;
pub mod gallery;
pub mod hopf;
pub mod lift;
pub mod report;
pub mod sampling;
pub mod selftest;
pub mod surface;

pub use cliffalg::{AdSPoint, CausalClass, SplitQuat};
pub use curvespec::CurveSpec;
pub use error::{Error, Result};
pub use fronts::{AdmissiblePair, AngleSample, FrontCurve, ProjectiveCurvature};
pub use gallery::{run_scenario, ScenarioOptions, ScenarioOutcome};
pub use hopf::{BaseManifold, HopfAxis, LegendrianPoint};
pub use lift::{AsymptoticCurve, ClosureRecord};
pub use report::{Check, VerificationReport};
pub use sampling::UniformAxis;
pub use surface::{synthesize, verify_patch, FlatSurfacePatch, Grid, Tolerances};
