use flatreach_core::geometry::{
    default_curvature_window, estimate_curvature, offset_curve, resample_arclength,
    segments_intersect, OffsetSide,
};
use flatreach_core::reach::*;
use flatreach_core::shapes;
use flatreach_core::{ClosedCurve, Error, Point};
use proptest::prelude::*;

/// Any two non-adjacent segments of the closed polyline cross.
fn brute_force_self_intersects(v: &[Point]) -> bool {
    let n = v.len();
    for i in 0..n {
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_intersect(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]) {
                return true;
            }
        }
    }
    false
}

#[test]
fn dumbbell_offset_collision_matches_pair_scan() {
    let d = shapes::dumbbell(1.0, 0.1, 0.01);
    let folded = offset_curve(&d, 0.15, OffsetSide::Inner).unwrap();
    assert!(!folded.injective);
    assert!(brute_force_self_intersects(folded.curve.vertices()));
    let fine = offset_curve(&d, 0.05, OffsetSide::Inner).unwrap();
    assert!(fine.injective);
    assert!(!brute_force_self_intersects(fine.curve.vertices()));
}

fn ellipse() -> ClosedCurve {
    shapes::ellipse(Point::ORIGIN, 2.0, 1.0, 1000)
}

#[test]
fn ellipse_reach_is_the_focal_cap() {
    let e = ellipse();
    let f = reach_federer(&e).unwrap();
    assert!((f.value - 0.5).abs() < 0.5 * 0.03, "{f:?}");
    assert_eq!(f.kind, ReachKind::Focal);
    let b = reach_bruteforce(&e, 0.01, 0.02).unwrap();
    assert!((b.value - 0.5).abs() < 0.03, "{b:?}");
    assert_eq!(double_normal_pair(&e), Err(Error::FocalOnly));
}

#[test]
fn stadium_estimators_agree() {
    let st = shapes::stadium(1.0, 4.0, 0.01);
    let b = reach_bruteforce(&st, 0.01, 0.02).unwrap();
    assert!((b.value - 1.0).abs() < 0.02, "{b:?}");
    let tol = 1e-3;
    let r = injectivity_radius(&st, 3.0, tol).unwrap();
    assert!((r - 1.0).abs() < tol + 0.02, "{r}");
}

struct Case {
    name: &'static str,
    curve: ClosedCurve,
    grid_step: f64,
}

fn cases() -> Vec<Case> {
    vec![
        Case {
            name: "circle",
            curve: shapes::circle(Point::ORIGIN, 1.0, 1000),
            grid_step: 0.01,
        },
        Case {
            name: "ellipse",
            curve: ellipse(),
            grid_step: 0.01,
        },
        Case {
            name: "stadium",
            curve: shapes::stadium(1.0, 4.0, 0.01),
            grid_step: 0.01,
        },
        Case {
            name: "dumbbell",
            curve: shapes::dumbbell(1.0, 0.2, 0.005),
            grid_step: 0.01,
        },
    ]
}

#[test]
fn estimators_are_consistent_with_the_oracle() {
    for case in cases() {
        let oracle = reach_bruteforce(&case.curve, case.grid_step, 2.0 * case.grid_step)
            .unwrap()
            .value;
        let fed = reach_federer(&case.curve).unwrap().value;
        assert!(
            (fed - oracle).abs() <= 0.03 * oracle + 2.0 * case.grid_step,
            "{}: federer {fed} vs oracle {oracle}",
            case.name
        );
        let tol = 1e-3 * case.curve.diameter_bound();
        let inj = injectivity_radius(&case.curve, 2.0 * oracle + 1.0, tol).unwrap();
        assert!(
            (inj - oracle).abs() <= 0.03 * oracle + tol,
            "{}: injectivity {inj} vs oracle {oracle}",
            case.name
        );
    }
}

#[test]
fn dumbbell_neck_family() {
    for h in [0.1, 0.15, 0.25] {
        let d = shapes::dumbbell(1.0, h, 0.004);
        let fed = reach_federer(&d).unwrap();
        assert_eq!(fed.kind, ReachKind::Bottleneck);
        assert!((fed.value - h).abs() <= 0.03 * h + 0.02, "h={h}: {fed:?}");
        let bf = reach_bruteforce(&d, 0.01, 0.02).unwrap();
        assert!((bf.value - h).abs() <= 0.03 * h + 0.02, "h={h}: {bf:?}");
    }
}

#[test]
fn bottleneck_tangents_are_parallel_at_fine_sampling() {
    for h in [0.15, 0.2, 0.3] {
        // spacing ≤ reach / 100
        let d = shapes::dumbbell(1.0, h, h / 100.0);
        let reach = reach_federer(&d).unwrap();
        assert_eq!(reach.kind, ReachKind::Bottleneck);
        let kmax = estimate_curvature(&d, default_curvature_window(&d))
            .unwrap()
            .into_iter()
            .fold(0.0, f64::max);
        assert!(kmax < 0.9 / reach.value);
        let pair = double_normal_pair(&d).unwrap();
        assert!(
            pair.tangent_angle_gap < 2f64.to_radians(),
            "h={h}: {pair:?}"
        );
        assert!((0.5 * pair.p.distance(pair.q) - h).abs() < 0.03 * h);
    }
}

#[test]
fn refinement_does_not_drift_from_the_oracle() {
    let h = 0.2;
    let coarse = shapes::dumbbell(1.0, h, 0.02);
    let fine = shapes::dumbbell(1.0, h, 0.01);
    let dev = |c: &ClosedCurve| (reach_federer(c).unwrap().value - h).abs();
    assert!(
        dev(&fine) <= dev(&coarse) + 1e-12,
        "{} vs {}",
        dev(&fine),
        dev(&coarse)
    );
}

#[test]
fn union_of_two_circles_sees_the_gap() {
    let a = shapes::circle(Point::new(-1.2, 0.0), 1.0, 600);
    let b = shapes::circle(Point::new(1.2, 0.0), 1.0, 600);
    let both = [a, b];
    let fed = reach_federer_with(&both, &FedererOptions::default()).unwrap();
    assert_eq!(fed.kind, ReachKind::Bottleneck);
    assert!((fed.value - 0.2).abs() < 0.2 * 0.03, "{fed:?}");
    let bf = reach_bruteforce_with(&both, &BruteforceOptions::new(0.01)).unwrap();
    assert!((bf.value - 0.2).abs() < 0.02, "{bf:?}");
}

/// Star-shaped curve `r(φ) = 1 + Σ aₖ cos(kφ + pₖ)` resampled by arc length.
fn wobbly(amps: &[(f64, f64)], step: f64) -> ClosedCurve {
    let n = 4000;
    let pts: Vec<Point> = (0..n)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
            let r = 1.0
                + amps
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, p))| a * ((i + 2) as f64 * phi + p).cos())
                    .sum::<f64>();
            Point::new(r * phi.cos(), r * phi.sin())
        })
        .collect();
    resample_arclength(&ClosedCurve::new(pts).unwrap(), step).unwrap()
}

fn amplitudes() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((-0.05..0.05f64, 0.0..std::f64::consts::TAU), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn reach_is_bounded_by_inverse_curvature(amps in amplitudes()) {
        let c = wobbly(&amps, 0.01);
        let kmax = estimate_curvature(&c, default_curvature_window(&c)).unwrap().into_iter().fold(0.0, f64::max);
        let r = reach_federer(&c).unwrap();
        prop_assert!(r.value <= 1.03 / kmax, "{} vs 1/κ = {}", r.value, 1.0 / kmax);
    }

    #[test]
    fn federer_scales_with_the_curve(amps in amplitudes(), scale in 0.2..5.0f64) {
        let c = wobbly(&amps, 0.01);
        let a = reach_federer(&c).unwrap().value;
        let b = reach_federer(&c.scaled(scale)).unwrap().value;
        prop_assert!((b - scale * a).abs() <= 0.01 * scale * a);
    }
}

#[test]
fn bruteforce_and_injectivity_scale_with_the_curve() {
    let d = shapes::dumbbell(1.0, 0.2, 0.01);
    for scale in [0.5, 3.0] {
        let s = d.scaled(scale);
        let a = reach_bruteforce(&d, 0.01, 0.02).unwrap().value;
        let b = reach_bruteforce(&s, 0.01 * scale, 0.02 * scale)
            .unwrap()
            .value;
        assert!((b - scale * a).abs() <= 0.01 * scale * a, "{a} {b}");
        let ia = injectivity_radius(&d, 1.0, 1e-4).unwrap();
        let ib = injectivity_radius(&s, scale, 1e-4 * scale).unwrap();
        assert!((ib - scale * ia).abs() <= 0.01 * scale * ia, "{ia} {ib}");
    }
}

#[test]
fn not_simple_curve_is_rejected() {
    let bow = shapes::polygon(&[(0.0, 0.0), (1.0, 1.0), (1.0, 0.0), (0.0, 1.0)]);
    assert!(matches!(
        injectivity_radius(&bow, 1.0, 0.01),
        Err(Error::Domain(_))
    ));
}
