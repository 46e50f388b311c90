use super::curve::ClosedCurve;
use crate::{Error, Result};

/// Re-samples the curve at (nearly) `step` arc-length intervals starting at
/// vertex 0. The effective step is `perimeter / round(perimeter / step)` so
/// the loop closes evenly.
pub fn resample_arclength(curve: &ClosedCurve, step: f64) -> Result<ClosedCurve> {
    let arc = curve.arc_length();
    let perimeter = arc.perimeter();
    if !(perimeter > 0.0) {
        return Err(Error::domain("cannot resample a zero-perimeter curve"));
    }
    if !(step > 0.0 && step < perimeter / 8.0) {
        return Err(Error::parameter(format!(
            "resampling step {step} must lie in (0, perimeter/8 = {})",
            perimeter / 8.0
        )));
    }
    let n = (perimeter / step).round() as usize;
    let h = perimeter / n as f64;
    let pts = (0..n).map(|k| arc.point_at(k as f64 * h)).collect();
    ClosedCurve::new(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Orientation, Point};
    use crate::shapes;
    use std::f64::consts::PI;

    #[test]
    fn square_resamples_to_unit_steps() {
        let sq = shapes::polygon(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]);
        let r = resample_arclength(&sq, 1.0).unwrap();
        assert_eq!(r.len(), 16);
        assert!((r.perimeter() - 16.0).abs() <= 0.016);
    }

    #[test]
    fn circle_vertex_count() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 1000);
        let r = resample_arclength(&c, 2.0 * PI / 100.0).unwrap();
        assert_eq!(r.len(), 100);
    }

    #[test]
    fn orientation_preserved() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 300).reversed();
        let r = resample_arclength(&c, 0.05).unwrap();
        assert_eq!(r.orientation(), Orientation::Clockwise);
    }

    #[test]
    fn step_bounds() {
        let sq = shapes::polygon(&[(0.0, 0.0), (4.0, 0.0), (4.0, 4.0), (0.0, 4.0)]);
        assert!(matches!(
            resample_arclength(&sq, 0.0),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            resample_arclength(&sq, 2.0),
            Err(Error::Parameter(_))
        ));
        assert!(resample_arclength(&sq, 1.9).is_ok());
    }
}
