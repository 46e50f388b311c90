use std::f64::consts::PI;

use flatreach_core::geometry::{
    default_curvature_window, estimate_curvature, estimate_tangent, offset_curve,
    resample_arclength, OffsetSide, SignedDistance,
};
use flatreach_core::shapes;
use flatreach_core::{ClosedCurve, GridMask, Orientation, Point};
use proptest::prelude::*;

/// `r(φ) = 1 + Σ aₖ cos((k+2)φ + pₖ)` densely sampled, then resampled by arc length.
fn wobbly(amps: &[(f64, f64)], step: f64) -> ClosedCurve {
    let n = 20_000;
    let pts: Vec<Point> = (0..n)
        .map(|k| {
            let phi = 2.0 * PI * k as f64 / n as f64;
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
    prop::collection::vec((-0.04..0.04f64, 0.0..std::f64::consts::TAU), 1..4)
}

fn angle_between(a: Point, b: Point) -> f64 {
    a.cross(b).atan2(a.dot(b)).abs()
}

fn random_star(radii: &[f64]) -> ClosedCurve {
    let n = radii.len();
    let pts = radii
        .iter()
        .enumerate()
        .map(|(k, &r)| {
            let phi = 2.0 * PI * k as f64 / n as f64;
            Point::new(r * phi.cos(), r * phi.sin())
        })
        .collect();
    ClosedCurve::new(pts).unwrap()
}

/// Analytic curvature of the ellipse `(a cos t, b sin t)` at the parameter of `p`.
fn ellipse_curvature(a: f64, b: f64, p: Point) -> f64 {
    let t = (p.y / b).atan2(p.x / a);
    a * b / (a * a * t.sin().powi(2) + b * b * t.cos().powi(2)).powf(1.5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn offset_tangents_stay_aligned(amps in amplitudes(), frac in 0.05..0.9f64, inner in any::<bool>()) {
        let coarse = wobbly(&amps, 0.01);
        let kmax = estimate_curvature(&coarse, default_curvature_window(&coarse))
            .unwrap()
            .into_iter()
            .fold(0.0, f64::max);
        let c = wobbly(&amps, (0.01 / kmax).min(0.01));
        let eps = frac / kmax;
        let side = if inner { OffsetSide::Inner } else { OffsetSide::Outer };
        let off = offset_curve(&c, eps, side).unwrap();
        for i in 0..c.len() {
            let gap = angle_between(estimate_tangent(&c, i), estimate_tangent(&off.curve, i));
            prop_assert!(gap < 2f64.to_radians(), "vertex {i}: {} deg", gap.to_degrees());
        }
    }

    #[test]
    fn reversal_negates_signed_area(radii in prop::collection::vec(0.5..1.5f64, 3..40)) {
        let c = random_star(&radii);
        prop_assert_eq!(c.orientation(), Orientation::CounterClockwise);
        prop_assert!(c.signed_area() > 0.0);
        let r = c.reversed();
        prop_assert_eq!(r.orientation(), Orientation::Clockwise);
        prop_assert!((r.signed_area() + c.signed_area()).abs() <= 1e-12 * c.signed_area());
    }

    #[test]
    fn resampling_preserves_perimeter(radii in prop::collection::vec(0.5..1.5f64, 20..=20)) {
        let c = random_star(&radii);
        let p = c.perimeter();
        let r = resample_arclength(&c, p / 5000.0).unwrap();
        prop_assert!((r.perimeter() - p).abs() <= 1e-3 * p, "{} vs {p}", r.perimeter());
        prop_assert_eq!(r.orientation(), c.orientation());
        let steps: Vec<f64> = r.segments().map(|(a, b)| a.distance(b)).collect();
        let h = p / steps.len() as f64;
        // chords across a corner are shorter than the arc step; elsewhere exact
        prop_assert!(steps.iter().filter(|&&s| (s - h).abs() > 0.01 * h).count() <= radii.len());
    }

    #[test]
    fn signed_distance_is_lipschitz(
        cx in 28.0..36.0f64,
        cy in 28.0..36.0f64,
        radius in 8.0..20.0f64,
        a in (2.0..62.0f64, 2.0..62.0f64),
        b in (2.0..62.0f64, 2.0..62.0f64),
    ) {
        let mask = GridMask::from_fn(64, 64, 1.0, Point::ORIGIN, |p| p.distance(Point::new(cx, cy)) <= radius).unwrap();
        let sd = SignedDistance::new(&mask);
        let (a, b) = (Point::new(a.0, a.1), Point::new(b.0, b.1));
        let n = 40;
        let pts: Vec<Point> = (0..=n).map(|k| a.lerp(b, k as f64 / n as f64)).collect();
        let vals: Vec<f64> = pts.iter().map(|&p| sd.eval(p).unwrap()).collect();
        for k in 0..n {
            let step = pts[k].distance(pts[k + 1]);
            prop_assert!((vals[k] - vals[k + 1]).abs() <= step + 2.0 * mask.spacing());
        }
    }
}

#[test]
fn inner_offset_of_circle_has_shifted_curvature() {
    let r = 1.0;
    let c = shapes::circle(Point::ORIGIN, r, 2000);
    for eps in [0.1, 0.3, 0.5, 0.7] {
        let off = offset_curve(&c, eps, OffsetSide::Inner).unwrap();
        assert!(off.injective);
        let k = estimate_curvature(&off.curve, default_curvature_window(&off.curve)).unwrap();
        let want = 1.0 / (r - eps);
        for v in k {
            assert!((v - want).abs() <= 0.02 * want, "eps={eps}: {v} vs {want}");
        }
    }
}

#[test]
fn curvature_converges_under_refinement() {
    let (a, b) = (2.0, 1.0);
    let source = shapes::ellipse(Point::ORIGIN, a, b, 40_000);
    let deviation = |step: f64| {
        let c = resample_arclength(&source, step).unwrap();
        let k = estimate_curvature(&c, default_curvature_window(&c)).unwrap();
        c.vertices()
            .iter()
            .zip(k)
            .map(|(&p, v)| (v - ellipse_curvature(a, b, p)).abs())
            .fold(0.0, f64::max)
    };
    let devs: Vec<f64> = [0.04, 0.02, 0.01].into_iter().map(deviation).collect();
    for w in devs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 1.0, "{devs:?}");
    }
}

#[test]
fn signed_distance_of_disk_mask() {
    let h = 1.0 / 64.0;
    let n = 256;
    let origin = Point::new(-2.0, -2.0);
    let mask = GridMask::from_fn(n, n, h, origin, |p| p.norm() <= 1.0).unwrap();
    let sd = SignedDistance::new(&mask);
    for (p, want) in [
        ((0.0, 0.0), 1.0),
        ((2.0, 0.0), -1.0),
        ((0.5, 0.0), 0.5),
        ((1.5, 0.0), -0.5),
    ] {
        let v = sd.eval(Point::new(p.0, p.1)).unwrap();
        assert!((v - want).abs() <= h, "{p:?}: {v}");
    }
    assert!(sd.eval(Point::new(3.0, 0.0)).is_err());
}
