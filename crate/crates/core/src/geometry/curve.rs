use super::point::{point_segment_distance, Point};
use crate::{Error, Result};

/// Traversal direction of a closed curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
        }
    }
}

/// An oriented closed polyline; the last vertex connects back to the first.
///
/// Construction removes consecutive duplicate vertices (including a repeated
/// closing vertex) and requires at least three distinct vertices with finite
/// coordinates. The orientation is derived from the sign of the enclosed
/// area: counterclockwise curves have positive signed area.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedCurve {
    vertices: Vec<Point>,
    orientation: Orientation,
    spacing_hint: f64,
}

impl ClosedCurve {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if let Some(p) = vertices.iter().find(|p| !p.is_finite()) {
            return Err(Error::domain(format!("non-finite vertex {p:?}")));
        }
        let mut deduped: Vec<Point> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if deduped.last() != Some(&p) {
                deduped.push(p);
            }
        }
        while deduped.len() > 1 && deduped.first() == deduped.last() {
            deduped.pop();
        }
        if deduped.len() < 3 {
            return Err(Error::domain(format!(
                "closed curve needs at least 3 distinct vertices, got {}",
                deduped.len()
            )));
        }
        Ok(Self::from_vertices_unchecked(deduped))
    }

    /// Builds a curve without deduplication; used for offsets that may
    /// degenerate.
    pub(crate) fn from_vertices_unchecked(vertices: Vec<Point>) -> Self {
        let area = signed_area_of(&vertices);
        let orientation = if area >= 0.0 {
            Orientation::CounterClockwise
        } else {
            Orientation::Clockwise
        };
        let n = vertices.len().max(1);
        let perimeter = perimeter_of(&vertices);
        Self {
            vertices,
            orientation,
            spacing_hint: perimeter / n as f64,
        }
    }

    #[inline]
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Mean vertex spacing (perimeter / vertex count).
    #[inline]
    pub fn spacing_hint(&self) -> f64 {
        self.spacing_hint
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point {
        self.vertices[i % self.vertices.len()]
    }

    /// Segment `i` runs from vertex `i` to vertex `i + 1` (cyclically).
    #[inline]
    pub fn segment(&self, i: usize) -> (Point, Point) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        (0..self.len()).map(move |i| self.segment(i))
    }

    pub fn signed_area(&self) -> f64 {
        signed_area_of(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        perimeter_of(&self.vertices)
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self::from_vertices_unchecked(v)
    }

    /// Uniform scaling about the origin; `factor` must be positive.
    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_vertices_unchecked(self.vertices.iter().map(|&p| p * factor).collect())
    }

    pub fn translated(&self, by: Point) -> Self {
        Self::from_vertices_unchecked(self.vertices.iter().map(|&p| p + by).collect())
    }

    /// Axis-aligned bounding box as `(min, max)`.
    pub fn bounding_box(&self) -> (Point, Point) {
        bounding_box_of(&self.vertices)
    }

    pub fn diameter_bound(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        lo.distance(hi)
    }

    /// Even-odd point-in-polygon test.
    pub fn contains(&self, p: Point) -> bool {
        let mut inside = false;
        for (a, b) in self.segments() {
            if (a.y > p.y) != (b.y > p.y) {
                let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
                if p.x < x {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Distance from `p` to the polyline.
    pub fn distance_to(&self, p: Point) -> f64 {
        self.segments()
            .map(|(a, b)| point_segment_distance(p, a, b))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn arc_length(&self) -> ArcLength {
        ArcLength::new(&self.vertices)
    }

    /// True when no two non-adjacent segments intersect and no adjacent
    /// segments fold back onto each other.
    pub fn is_simple(&self) -> bool {
        first_self_intersection(&self.vertices).is_none()
    }

    pub fn validate_simple(&self) -> Result<()> {
        match first_self_intersection(&self.vertices) {
            None => Ok(()),
            Some((i, j)) => Err(Error::domain(format!(
                "curve is not simple: segments {i} and {j} intersect"
            ))),
        }
    }
}

/// Cumulative arc length of a closed polyline, for arc-length lookups.
#[derive(Debug, Clone)]
pub struct ArcLength {
    points: Vec<Point>,
    /// `cumulative[i]` is the arc length at vertex `i`; `cumulative[n]` is the
    /// perimeter.
    cumulative: Vec<f64>,
}

impl ArcLength {
    fn new(points: &[Point]) -> Self {
        let n = points.len();
        let mut cumulative = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        cumulative.push(0.0);
        for i in 0..n {
            acc += points[i].distance(points[(i + 1) % n]);
            cumulative.push(acc);
        }
        Self {
            points: points.to_vec(),
            cumulative,
        }
    }

    #[inline]
    pub fn perimeter(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }

    /// Arc-length position of vertex `i`.
    #[inline]
    pub fn at_vertex(&self, i: usize) -> f64 {
        self.cumulative[i]
    }

    /// Shortest arc-length separation of two positions along the loop.
    #[inline]
    pub fn cyclic_separation(&self, s: f64, t: f64) -> f64 {
        let p = self.perimeter();
        let d = (s - t).abs() % p;
        d.min(p - d)
    }

    /// The point at arc length `s`, taken modulo the perimeter.
    pub fn point_at(&self, s: f64) -> Point {
        let total = self.perimeter();
        if total <= 0.0 {
            return self.points[0];
        }
        let s = s.rem_euclid(total);
        // index of the segment containing s
        let idx = match self
            .cumulative
            .binary_search_by(|c| c.partial_cmp(&s).unwrap())
        {
            Ok(i) => i,
            Err(i) => i - 1,
        };
        let n = self.points.len();
        let i = idx.min(n - 1);
        let seg = self.cumulative[i + 1] - self.cumulative[i];
        let a = self.points[i];
        let b = self.points[(i + 1) % n];
        if seg <= 0.0 {
            a
        } else {
            a.lerp(b, (s - self.cumulative[i]) / seg)
        }
    }
}

pub(crate) fn signed_area_of(v: &[Point]) -> f64 {
    let n = v.len();
    let mut acc = 0.0;
    for i in 0..n {
        acc += v[i].cross(v[(i + 1) % n]);
    }
    0.5 * acc
}

pub(crate) fn perimeter_of(v: &[Point]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].distance(v[(i + 1) % n])).sum()
}

pub(crate) fn bounding_box_of(v: &[Point]) -> (Point, Point) {
    let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in v {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (lo, hi)
}

const COLLINEAR_EPS: f64 = 1e-12;

/// Orientation of `c` relative to the directed line `a → b`: +1 left,
/// -1 right, 0 collinear (within a relative 1e-12 tolerance).
fn orient(a: Point, b: Point, c: Point) -> i8 {
    let ab = b - a;
    let ac = c - a;
    let cr = ab.cross(ac);
    let scale = ab.norm() * ac.norm();
    if cr.abs() <= COLLINEAR_EPS * scale {
        0
    } else if cr > 0.0 {
        1
    } else {
        -1
    }
}

#[inline]
fn on_segment(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test with orientation predicates.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 {
        return true;
    }
    (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
}

/// Sweep over segments sorted by their leftmost x; returns the first
/// offending pair of segment indices.
pub(crate) fn first_self_intersection(v: &[Point]) -> Option<(usize, usize)> {
    let n = v.len();
    if n < 3 {
        return Some((0, 0));
    }
    let seg = |i: usize| (v[i], v[(i + 1) % n]);

    // adjacent segments: only a fold-back (collinear, opposite) counts
    for i in 0..n {
        let (a, b) = seg(i);
        let (_, c) = seg((i + 1) % n);
        let u = b - a;
        let w = c - b;
        if u.norm_squared() == 0.0 || w.norm_squared() == 0.0 {
            return Some((i, (i + 1) % n));
        }
        if u.cross(w).abs() <= COLLINEAR_EPS * u.norm() * w.norm() && u.dot(w) < 0.0 {
            return Some((i, (i + 1) % n));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let min_x = |i: usize| {
        let (a, b) = seg(i);
        a.x.min(b.x)
    };
    order.sort_by(|&i, &j| min_x(i).total_cmp(&min_x(j)).then(i.cmp(&j)));
    for (k, &i) in order.iter().enumerate() {
        let (a, b) = seg(i);
        let max_x = a.x.max(b.x);
        let (lo_y, hi_y) = (a.y.min(b.y), a.y.max(b.y));
        for &j in &order[k + 1..] {
            let (c, d) = seg(j);
            if c.x.min(d.x) > max_x {
                break;
            }
            if c.y.min(d.y) > hi_y || c.y.max(d.y) < lo_y {
                continue;
            }
            let adjacent = (i + 1) % n == j || (j + 1) % n == i;
            if adjacent {
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Some((i.min(j), i.max(j)));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(side: f64) -> ClosedCurve {
        ClosedCurve::new(vec![
            Point::new(0.0, 0.0),
            Point::new(side, 0.0),
            Point::new(side, side),
            Point::new(0.0, side),
        ])
        .unwrap()
    }

    #[test]
    fn orientation_follows_signed_area() {
        let sq = square(2.0);
        assert_eq!(sq.signed_area(), 4.0);
        assert_eq!(sq.orientation(), Orientation::CounterClockwise);
        let rev = sq.reversed();
        assert_eq!(rev.signed_area(), -4.0);
        assert_eq!(rev.orientation(), Orientation::Clockwise);
    }

    #[test]
    fn construction_dedups_and_validates() {
        let c = ClosedCurve::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 0.0),
        ])
        .unwrap();
        assert_eq!(c.len(), 3);
        assert!(ClosedCurve::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).is_err());
        assert!(ClosedCurve::new(vec![
            Point::new(0.0, 0.0),
            Point::new(f64::NAN, 0.0),
            Point::new(1.0, 1.0)
        ])
        .is_err());
    }

    #[test]
    fn bowtie_is_not_simple() {
        let bowtie = ClosedCurve::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        assert!(!bowtie.is_simple());
        assert!(bowtie.validate_simple().is_err());
        assert!(square(1.0).is_simple());
    }

    #[test]
    fn fold_back_is_not_simple() {
        let spike = ClosedCurve::new(vec![
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
        ])
        .unwrap();
        assert!(!spike.is_simple());
    }

    #[test]
    fn arc_length_lookup() {
        let sq = square(4.0);
        let arc = sq.arc_length();
        assert_eq!(arc.perimeter(), 16.0);
        assert_eq!(arc.point_at(2.0), Point::new(2.0, 0.0));
        assert_eq!(arc.point_at(6.0), Point::new(4.0, 2.0));
        assert_eq!(arc.point_at(-2.0), Point::new(0.0, 2.0));
        assert_eq!(arc.cyclic_separation(1.0, 15.0), 2.0);
    }

    #[test]
    fn even_odd_contains() {
        let sq = square(2.0);
        assert!(sq.contains(Point::new(1.0, 1.0)));
        assert!(!sq.contains(Point::new(3.0, 1.0)));
        assert!(!sq.contains(Point::new(-0.5, 1.0)));
    }
}
