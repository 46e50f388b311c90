use rayon::prelude::*;

use super::curve::ClosedCurve;
use super::point::Point;
use crate::{Error, Result};

/// Unit tangent at vertex `i` from the central difference of its neighbours.
pub fn estimate_tangent(curve: &ClosedCurve, i: usize) -> Point {
    let n = curve.len();
    let prev = curve.vertex((i + n - 1) % n);
    let next = curve.vertex(i + 1);
    (next - prev).normalized()
}

/// Inverse circumradius of the triangle `a b c`; zero for collinear triples.
pub fn menger_curvature(a: Point, b: Point, c: Point) -> f64 {
    let ab = a.distance(b);
    let bc = b.distance(c);
    let ca = c.distance(a);
    let denom = ab * bc * ca;
    if denom == 0.0 {
        return 0.0;
    }
    let twice_area = (b - a).cross(c - a).abs();
    // relative collinearity cut-off keeps straight runs at exactly zero
    if twice_area <= 1e-12 * (ab * ca).max(f64::MIN_POSITIVE) {
        return 0.0;
    }
    2.0 * twice_area / denom
}

/// Default Menger window: six mean vertex spacings.
pub fn default_curvature_window(curve: &ClosedCurve) -> f64 {
    6.0 * curve.spacing_hint()
}

/// Unsigned curvature at every vertex, from the circle through the points at
/// arc length `±window/2` around the vertex and the vertex itself.
pub fn estimate_curvature(curve: &ClosedCurve, window: f64) -> Result<Vec<f64>> {
    let spacing = curve.spacing_hint();
    if !(window >= 2.0 * spacing) {
        return Err(Error::parameter(format!(
            "curvature window {window} is below twice the mean vertex spacing {spacing}"
        )));
    }
    let arc = curve.arc_length();
    if window > 0.5 * arc.perimeter() {
        return Err(Error::parameter(format!(
            "curvature window {window} exceeds half the perimeter {}",
            arc.perimeter()
        )));
    }
    let half = 0.5 * window;
    Ok((0..curve.len())
        .into_par_iter()
        .map(|i| {
            let s = arc.at_vertex(i);
            menger_curvature(
                arc.point_at(s - half),
                curve.vertex(i),
                arc.point_at(s + half),
            )
        })
        .collect())
}
