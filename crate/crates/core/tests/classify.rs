mod common;

use rand::Rng;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, TAU};
use toric_core::classify::fit_components;
use toric_core::{
    classify, trace_section, verify_cassini_property, verify_villarceau_circles, villarceau_angle,
    SectionClass, SectionProblem, ToricError, TorusParams, DEFAULT_TOL, UI_TOL,
};

const TOL: f64 = DEFAULT_TOL;

fn tag(sp: &SectionProblem) -> &'static str {
    classify(sp, TOL).unwrap().tag()
}

/// Parameters hitting each named class exactly, drawn at random.
fn named_case(rng: &mut rand_chacha::ChaCha8Rng) -> (f64, f64, f64, f64) {
    let small = rng.gen_range(0.2..3.0);
    let big = small * rng.gen_range(1.05..4.0);
    let tp = TorusParams::new(big, small).unwrap();
    match rng.gen_range(0..8) {
        0 => (big, small, villarceau_angle(&tp), 0.0),
        1 => (big, small, 0.0, small),
        2 => (2.0 * small, small, 0.0, small),
        3 => (big, small, 0.0, big - small),
        4 => (big, small, FRAC_PI_2, rng.gen_range(0.0..small)),
        5 => (big, small, rng.gen_range(0.1..1.4), 0.0),
        6 => (big, small, 0.0, rng.gen_range(0.1..0.9) * small),
        _ => (
            big,
            small,
            rng.gen_range(0.1..1.4),
            rng.gen_range(0.1..1.0) * small,
        ),
    }
}

#[test]
fn classes_are_scale_equivariant_and_alpha_invariant() {
    let mut rng = common::rng(20);
    for _ in 0..100 {
        let (big, small, phi, rho) = named_case(&mut rng);
        let base = tag(&common::problem(big, small, 0.0, phi, rho));
        for lambda in [0.5, 2.0, 10.0] {
            let scaled = common::problem(lambda * big, lambda * small, 0.0, phi, lambda * rho);
            assert_eq!(
                tag(&scaled),
                base,
                "lambda={lambda} R={big} r={small} phi={phi} rho={rho}"
            );
        }
        let rotated = common::problem(big, small, rng.gen_range(0.0..TAU), phi, rho);
        assert_eq!(tag(&rotated), base);
    }
}

#[test]
fn perturbed_conditions_degrade() {
    let eps = 10.0 * TOL;
    let mut rng = common::rng(21);
    for _ in 0..50 {
        let small = rng.gen_range(0.2..3.0);
        let big = small * rng.gen_range(2.2..4.0);
        let tp = TorusParams::new(big, small).unwrap();
        let p = |big: f64, phi: f64, rho: f64| tag(&common::problem(big, small, 0.0, phi, rho));
        let va = villarceau_angle(&tp);

        assert_eq!(p(big, va, 0.0), "Villarceau");
        assert_eq!(p(big, va + eps, 0.0), "CentralGeneric");
        assert_eq!(p(big, va, eps * big), "Generic");

        assert_eq!(p(big, 0.0, small), "CassiniOval");
        assert_eq!(p(big, 0.0, small * (1.0 + eps)), "SpiricGeneric");
        assert_eq!(p(big, eps, small), "Generic");

        assert_eq!(p(2.0 * small, 0.0, small), "BernoulliLemniscate");
        assert_eq!(p(2.0 * small * (1.0 + eps), 0.0, small), "CassiniOval");

        assert_eq!(p(big, 0.0, big - small), "HippopedeOfProclus");
        assert_eq!(p(big, 0.0, big - small + eps * big), "SpiricGeneric");

        assert_eq!(p(big, FRAC_PI_2, 0.0), "HorizontalCircles");
        assert_eq!(p(big, FRAC_PI_2 - eps, 0.0), "CentralGeneric");
        assert_eq!(p(big, FRAC_PI_2 - eps, 0.5 * small), "Generic");

        assert_eq!(p(big, 0.3, big * 0.3f64.cos() + small + eps * big), "Empty");
    }
}

#[test]
fn named_examples() {
    let sp = common::problem(2.0, 1.0, 0.0, 0.0, 1.0);
    assert_eq!(
        classify(&sp, TOL).unwrap(),
        SectionClass::BernoulliLemniscate {
            b_squared: 4.0,
            c: 2.0
        }
    );
    assert_eq!(
        tag(&common::problem(3.0, 1.0, 0.0, 0.0, 2.0)),
        "HippopedeOfProclus"
    );
    assert_eq!(
        tag(&common::problem(3.0, 1.0, 0.0, 0.0, 1.0)),
        "CassiniOval"
    );
    assert_eq!(tag(&common::problem(3.0, 1.0, 0.0, 0.4, 5.0)), "Empty");
    match classify(&common::problem(2.0, 1.0, 0.0, FRAC_PI_3, 0.0), TOL).unwrap() {
        SectionClass::Villarceau {
            plane_angle,
            axis_angle,
        } => {
            assert!((axis_angle - FRAC_PI_3).abs() < 1e-15);
            assert!((plane_angle - (0.5f64).asin()).abs() < 1e-15);
        }
        other => panic!("{other:?}"),
    }
    assert!(classify(&common::problem(2.0, 1.0, 0.0, 0.0, 0.0), 0.0).is_err());
}

#[test]
fn villarceau_angle_values() {
    let a = |big: f64, small: f64| villarceau_angle(&TorusParams::new(big, small).unwrap());
    assert!((a(2.0, 1.0) - 3f64.sqrt().atan()).abs() < 1e-15);
    assert!((a(2.0, 1.0) - FRAC_PI_3).abs() < 1e-15);
    assert_eq!(a(1.0, 1.0), 0.0);
    assert!((a(2f64.sqrt(), 1.0) - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
}

#[test]
fn ui_tolerance_sweep_reaches_lemniscate() {
    let small = 1.0;
    let tags: Vec<&str> = (0..=100)
        .map(|k| {
            let rho = small * k as f64 / 100.0;
            classify(&common::problem(2.0 * small, small, 0.0, 0.0, rho), UI_TOL)
                .unwrap()
                .tag()
        })
        .collect();
    assert_eq!(tags[0], "CentralGeneric");
    assert_eq!(tags[50], "SpiricGeneric");
    assert_eq!(tags[100], "BernoulliLemniscate");
}

#[test]
fn cassini_product_is_constant_on_trace() {
    let sp = common::problem(3.0, 1.0, 0.0, 0.0, 1.0);
    let curve = trace_section(&sp, 512).unwrap();
    assert_eq!(curve.polylines2d.len(), 2);
    let dev = verify_cassini_property(&curve, &sp).unwrap();
    assert!(dev <= 1e-6, "deviation {dev}");
}

/// Traced points are refined onto the curve, so the deviation sits at the
/// rounding floor of the edge refinement for every resolution.
#[test]
fn cassini_deviation_does_not_grow_with_resolution() {
    const FLOOR: f64 = 1e-11;
    let sp = common::problem(3.0, 1.0, 0.0, 0.0, 1.0);
    let devs: Vec<f64> = [128, 512, 2048]
        .iter()
        .map(|&n| verify_cassini_property(&trace_section(&sp, n).unwrap(), &sp).unwrap())
        .collect();
    for pair in devs.windows(2) {
        assert!(pair[1] <= pair[0].max(FLOOR), "{devs:?}");
    }
}

#[test]
fn lemniscate_node_product_is_focal_distance_squared() {
    let sp = common::problem(2.0, 1.0, 0.0, 0.0, 1.0);
    let curve = trace_section(&sp, 512).unwrap();
    let dev = verify_cassini_property(&curve, &sp).unwrap();
    assert!(dev <= 1e-6);
    let mut node = toric_core::SectionCurve::empty(1.0);
    node.polylines2d = vec![vec![toric_core::Point2::new(0.0, 0.0)]];
    assert_eq!(verify_cassini_property(&node, &sp).unwrap(), 0.0);
}

#[test]
fn cassini_check_rejects_other_classes() {
    let sp = common::problem(3.0, 1.0, 0.0, 0.5, 0.7);
    let curve = trace_section(&sp, 64).unwrap();
    assert!(matches!(
        verify_cassini_property(&curve, &sp),
        Err(ToricError::NotCassini(_))
    ));
}

#[test]
fn villarceau_sections_are_two_circles_of_radius_big() {
    for (big, small) in [(2.0, 1.0), (3.0, 1.0), (5.0, 2.0), (4.0, 3.0)] {
        let tp = TorusParams::new(big, small).unwrap();
        let sp = common::problem(big, small, 0.7, villarceau_angle(&tp), 0.0);
        let curve = trace_section(&sp, 512).unwrap();
        let report = verify_villarceau_circles(&curve, &sp).unwrap();
        assert_eq!(report.fits.len(), 2);
        assert!(report.passes(1e-5), "R={big} r={small}: {report:?}");
        let mut offsets: Vec<f64> = report.fits.iter().map(|f| f.center.t).collect();
        offsets.sort_by(f64::total_cmp);
        assert!((offsets[0] + small).abs() < 1e-5 && (offsets[1] - small).abs() < 1e-5);
    }
}

#[test]
fn perturbed_villarceau_plane_is_not_circular() {
    let sp = common::problem(2.0, 1.0, 0.0, FRAC_PI_3 + 0.1, 0.0);
    let curve = trace_section(&sp, 512).unwrap();
    assert!(matches!(
        verify_villarceau_circles(&curve, &sp),
        Err(ToricError::NotVillarceau(_))
    ));
    let worst = fit_components(&curve)
        .into_iter()
        .map(|f| f.unwrap().max_radial_deviation)
        .fold(0.0, f64::max);
    assert!(worst > 1e-3, "deviation {worst}");
}

#[test]
fn horizontal_circles_are_not_villarceau() {
    let sp = common::problem(2.0, 1.0, 0.0, FRAC_PI_2, 0.0);
    let curve = trace_section(&sp, 256).unwrap();
    assert!(verify_villarceau_circles(&curve, &sp).is_err());
    let mut radii: Vec<f64> = fit_components(&curve)
        .iter()
        .map(|f| f.unwrap().radius)
        .collect();
    radii.sort_by(f64::total_cmp);
    assert!((radii[0] - 1.0).abs() < 1e-9 && (radii[1] - 3.0).abs() < 1e-9);
}

#[test]
fn component_count_guard() {
    let sp = common::problem(2.0, 1.0, 0.0, FRAC_PI_3, 0.0);
    let mut curve = trace_section(&sp, 256).unwrap();
    curve.polylines2d.truncate(1);
    assert!(matches!(
        verify_villarceau_circles(&curve, &sp),
        Err(ToricError::ComponentCount(1))
    ));
}
