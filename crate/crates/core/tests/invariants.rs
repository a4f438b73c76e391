use std::f64::consts::PI;

use proptest::prelude::*;

use adsflat_core::cliffalg::{exp_fiber, exp_imag, inner, AdSPoint, SplitQuat};
use adsflat_core::gallery::build_from_fronts;
use adsflat_core::hopf::{double_cover, fiber, h, hopf_map, lift_point, HopfAxis};
use adsflat_core::lift::causal_class_of_angle;
use adsflat_core::surface::export::{write_csv, CSV_HEADER};
use adsflat_core::surface::{coordinate_chart, forms_from_angles, Grid, Tolerances};
use adsflat_core::{CausalClass, CurveSpec, UniformAxis};

fn quat() -> impl Strategy<Value = SplitQuat> {
    prop::array::uniform4(-3.0f64..3.0).prop_map(SplitQuat::from_array)
}

// products of one-parameter subgroups stay on the quadric
fn ads() -> impl Strategy<Value = AdSPoint> {
    (-PI..PI, -1.5f64..1.5, -1.5f64..1.5).prop_map(|(a, b, c)| {
        let q = exp_imag(SplitQuat::I, a) * exp_imag(SplitQuat::J, b) * exp_imag(SplitQuat::K, c);
        AdSPoint::new(q).unwrap()
    })
}

fn close(a: SplitQuat, b: SplitQuat, scale: f64) -> bool {
    (a - b).max_abs() <= 1e-10 * scale.max(1.0)
}

proptest! {
    #[test]
    fn conjugation_reverses_products(a in quat(), b in quat()) {
        prop_assert!(close((a * b).conj(), b.conj() * a.conj(), a.euclid_norm() * b.euclid_norm()));
    }

    #[test]
    fn multiplication_is_associative(a in quat(), b in quat(), c in quat()) {
        let s = a.euclid_norm() * b.euclid_norm() * c.euclid_norm();
        prop_assert!(close((a * b) * c, a * (b * c), s));
    }

    // ⟨z, z⟩ = −z z̄
    #[test]
    fn norm_is_multiplicative_up_to_sign(a in quat(), b in quat()) {
        let s = (a.euclid_norm() * b.euclid_norm()).powi(2);
        prop_assert!(((a * b).norm_sq() + a.norm_sq() * b.norm_sq()).abs() <= 1e-10 * s.max(1.0));
    }

    #[test]
    fn metric_is_bi_invariant(x in ads(), y in ads(), z in quat(), w in quat()) {
        let (x, y) = (x.q(), y.q());
        let lhs = inner(x * z * y, x * w * y);
        let s = (x.euclid_norm() * y.euclid_norm()).powi(2) * z.euclid_norm() * w.euclid_norm();
        prop_assert!((lhs - inner(z, w)).abs() <= 1e-9 * s.max(1.0));
    }

    #[test]
    fn fiber_exponential_is_a_homomorphism(r in prop::array::uniform3(-2.0f64..2.0), s in -2.0f64..2.0, t in -2.0f64..2.0) {
        prop_assume!(r.iter().map(|c| c.abs()).sum::<f64>() > 1e-3);
        let axis = HopfAxis::new(SplitQuat::imag(r[0], r[1], r[2])).unwrap();
        let rho = axis.rho();
        let prod = exp_fiber(rho, s).unwrap() * exp_fiber(rho, t).unwrap();
        let sum = exp_fiber(rho, s + t).unwrap();
        prop_assert!(close(prod, sum, sum.euclid_norm() * rho.euclid_norm()));
    }

    #[test]
    fn hopf_image_lies_in_the_hyperbolic_plane(z in ads()) {
        let g = h(z);
        let s = z.q().euclid_norm().powi(2);
        prop_assert!(g.re.abs() <= 1e-10 * s);
        prop_assert!((g.norm_sq() + 1.0).abs() <= 1e-9 * s * s);
    }

    #[test]
    fn hopf_map_is_constant_on_fibers(z in ads(), r in prop::array::uniform3(-2.0f64..2.0), t in -1.0f64..1.0) {
        prop_assume!(r.iter().map(|c| c.abs()).sum::<f64>() > 1e-3);
        let axis = HopfAxis::new(SplitQuat::imag(r[0], r[1], r[2])).unwrap();
        let moved = fiber(&axis, z, t);
        let s = moved.q().euclid_norm().powi(2) * axis.rho().euclid_norm();
        prop_assert!(close(hopf_map(&axis, moved), hopf_map(&axis, z), s));
    }

    #[test]
    fn double_cover_inverts(z in ads()) {
        let p = double_cover(z);
        let back = lift_point(&p).unwrap().q();
        let s = z.q().euclid_norm().powi(3);
        prop_assert!(close(back, z.q(), s) || close(back, -z.q(), s));
        prop_assert_eq!(double_cover(z.neg()), p);
    }

    #[test]
    fn closed_form_relations(w1 in 0.0f64..PI, w2 in 0.0f64..PI) {
        let (first, second, third) = forms_from_angles(w1, w2);
        prop_assert_eq!(third[0], -first[0]);
        prop_assert_eq!(third[1], first[1]);
        prop_assert_eq!(third[2], -first[2]);
        prop_assert_eq!((second[0], second[2]), (0.0, 0.0));
        let det = second[0] * second[2] - second[1] * second[1];
        prop_assert!((det + (w1 + w2).sin().powi(2)).abs() <= 1e-15);
    }

    #[test]
    fn angle_class_follows_cos_two_omega(w in 1e-3f64..PI - 1e-3) {
        let s = -(2.0 * w).cos();
        let c = causal_class_of_angle(w);
        if s.abs() > 1e-6 {
            prop_assert_eq!(c, if s > 0.0 { CausalClass::Spacelike } else { CausalClass::Timelike });
        }
    }

    #[test]
    fn constant_angle_chart_is_linear(w1 in 0.1f64..3.0, w2 in 0.1f64..3.0, u in -0.9f64..0.9, v in -0.9f64..0.9) {
        let ax = UniformAxis::from_range(-1.0, 1.0, 0.01).unwrap();
        let c = coordinate_chart(ax, &vec![w1; ax.len], ax, &vec![w2; ax.len]).unwrap();
        let (x, y) = c.at(u, v).unwrap();
        prop_assert!((x - (u * w1.cos() + v * w2.cos())).abs() <= 1e-12);
        prop_assert!((y - (u * w1.sin() - v * w2.sin())).abs() <= 1e-12);
    }

    #[test]
    fn tolerances_accept_only_positive_values(idx in 0usize..11, value in -1.0f64..1.0) {
        let mut t = Tolerances::default();
        let name = Tolerances::NAMES[idx];
        prop_assert_eq!(t.set(name, value).is_ok(), value > 0.0);
        prop_assert!(t.set("no_such_tolerance", 1.0).is_err());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn csv_has_one_row_per_node(nu in 2usize..12, nv in 2usize..12) {
        let s1 = CurveSpec::from_json(r#"{"schema":1,"kind":"constant-curvature","k":3.0}"#).unwrap();
        let s2 = CurveSpec::from_json(r#"{"schema":1,"kind":"constant-curvature","k":1.4}"#).unwrap();
        let grid = Grid::new(UniformAxis::new(-0.5, 0.1, nu).unwrap(), UniformAxis::new(-0.3, 0.05, nv).unwrap());
        let b = build_from_fronts(&s1.build(1.0).unwrap(), &s2.build(1.0).unwrap(), &grid).unwrap();
        let mut out = Vec::new();
        write_csv(&b.patch, &mut out).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        prop_assert_eq!(lines.next(), Some(CSV_HEADER));
        prop_assert_eq!(lines.count(), nu * nv);
    }
}
