use super::curvature::estimate_tangent;
use super::curve::{first_self_intersection, ClosedCurve, Orientation};
use super::point::Point;
use crate::{Error, Result};

/// Which normal map to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OffsetSide {
    Outer,
    Inner,
}

/// Image of a normal map `γ(s) + ε·n(s)` on the sampled curve.
#[derive(Debug, Clone)]
pub struct OffsetResult {
    pub curve: ClosedCurve,
    pub epsilon: f64,
    pub side: OffsetSide,
    /// No segment of the offset reverses direction relative to the source
    /// segment (no focal fold) and the offset polyline is simple.
    pub injective: bool,
}

/// Outward unit normals per vertex: the central-difference tangent rotated by
/// −90° for counterclockwise curves, +90° for clockwise ones.
pub fn vertex_normals(curve: &ClosedCurve) -> Vec<Point> {
    let sign = match curve.orientation() {
        Orientation::CounterClockwise => -1.0,
        Orientation::Clockwise => 1.0,
    };
    (0..curve.len())
        .map(|i| estimate_tangent(curve, i).perp() * sign)
        .collect()
}

pub fn offset_curve(curve: &ClosedCurve, eps: f64, side: OffsetSide) -> Result<OffsetResult> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::domain(format!(
            "offset distance must be positive, got {eps}"
        )));
    }
    let normals = vertex_normals(curve);
    let signed = match side {
        OffsetSide::Outer => eps,
        OffsetSide::Inner => -eps,
    };
    let moved: Vec<Point> = curve
        .vertices()
        .iter()
        .zip(&normals)
        .map(|(&p, &n)| p + n * signed)
        .collect();

    let n = moved.len();
    let folds = (0..n).any(|i| {
        let src = curve.vertex(i + 1) - curve.vertex(i);
        let dst = moved[(i + 1) % n] - moved[i];
        src.dot(dst) <= 0.0
    });
    let injective = !folds && first_self_intersection(&moved).is_none();
    Ok(OffsetResult {
        curve: ClosedCurve::from_vertices_unchecked(moved),
        epsilon: eps,
        side,
        injective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;
    use std::f64::consts::PI;

    #[test]
    fn concentric_circle_offsets() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 512);
        let out = offset_curve(&c, 0.5, OffsetSide::Outer).unwrap();
        assert!(out.injective);
        let p = out.curve.perimeter();
        assert!((p - 3.0 * PI).abs() < 0.001 * 3.0 * PI, "{p}");
        for v in out.curve.vertices() {
            assert!((v.norm() - 1.5).abs() < 1e-9);
        }

        let inn = offset_curve(&c, 0.5, OffsetSide::Inner).unwrap();
        assert!(inn.injective);
        for v in inn.curve.vertices() {
            assert!((v.norm() - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn inner_offset_past_center_folds() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 128);
        assert!(!offset_curve(&c, 1.2, OffsetSide::Inner).unwrap().injective);
        assert!(offset_curve(&c, 1.2, OffsetSide::Outer).unwrap().injective);
    }

    #[test]
    fn dumbbell_neck_collision() {
        let d = shapes::dumbbell(1.0, 0.1, 0.005);
        assert!(!offset_curve(&d, 0.15, OffsetSide::Inner).unwrap().injective);
        assert!(offset_curve(&d, 0.05, OffsetSide::Inner).unwrap().injective);
    }

    #[test]
    fn clockwise_outer_normal_points_out() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 64).reversed();
        let out = offset_curve(&c, 0.25, OffsetSide::Outer).unwrap();
        assert!((out.curve.vertex(0).norm() - 1.25).abs() < 1e-9);
    }

    #[test]
    fn nonpositive_eps_is_domain_error() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 64);
        assert!(matches!(
            offset_curve(&c, 0.0, OffsetSide::Outer),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            offset_curve(&c, -1.0, OffsetSide::Inner),
            Err(Error::Domain(_))
        ));
    }
}
