use super::curve::ClosedCurve;
use super::mask::GridMask;
use super::point::{point_segment_distance, Point};
use crate::flatnorm::extract_boundary;
use crate::{Error, Result};

/// Signed distance to the polygonal boundary of a mask: positive inside Ω.
///
/// The boundary is the unsmoothed marching-squares contour set of the mask;
/// the sign comes from even-odd ray casting against all contours, so
/// sub-pixel queries are consistent with the polygonal boundary.
#[derive(Debug, Clone)]
pub struct SignedDistance {
    boundary: Vec<ClosedCurve>,
    bounds: (Point, Point),
}

impl SignedDistance {
    pub fn new(mask: &GridMask) -> Self {
        Self {
            boundary: extract_boundary(mask, 0),
            bounds: mask.bounds(),
        }
    }

    pub fn boundary(&self) -> &[ClosedCurve] {
        &self.boundary
    }

    pub fn eval(&self, p: Point) -> Result<f64> {
        let (lo, hi) = self.bounds;
        if !(p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y) {
            return Err(Error::domain(format!("point {p:?} lies outside the grid")));
        }
        let mut dist = f64::INFINITY;
        let mut crossings = 0usize;
        for curve in &self.boundary {
            for (a, b) in curve.segments() {
                dist = dist.min(point_segment_distance(p, a, b));
                if (a.y > p.y) != (b.y > p.y) {
                    let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                    if p.x < x {
                        crossings += 1;
                    }
                }
            }
        }
        Ok(if crossings % 2 == 1 { dist } else { -dist })
    }
}

/// One-shot signed distance; build a [`SignedDistance`] for repeated queries.
pub fn signed_distance(mask: &GridMask, p: Point) -> Result<f64> {
    SignedDistance::new(mask).eval(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_disk(spacing: f64) -> GridMask {
        let n = (2.6 / spacing).ceil() as usize;
        let origin = Point::new(-1.3, -1.3);
        GridMask::from_fn(n, n, spacing, origin, |p| p.norm() <= 1.0).unwrap()
    }

    #[test]
    fn unit_disk_values() {
        let h = 0.02;
        let m = unit_disk(h);
        let sd = SignedDistance::new(&m);
        assert!((sd.eval(Point::new(0.0, 0.0)).unwrap() - 1.0).abs() <= h);
        assert!((sd.eval(Point::new(0.5, 0.0)).unwrap() - 0.5).abs() <= h);
        // (2, 0) is outside the 2.6-wide grid; use a wider grid
        let wide =
            GridMask::from_fn(250, 150, h, Point::new(-1.5, -1.5), |p| p.norm() <= 1.0).unwrap();
        assert!((signed_distance(&wide, Point::new(2.0, 0.0)).unwrap() + 1.0).abs() <= h);
    }

    #[test]
    fn outside_grid_is_domain_error() {
        let m = unit_disk(0.05);
        assert!(matches!(
            signed_distance(&m, Point::new(5.0, 0.0)),
            Err(Error::Domain(_))
        ));
    }
}
