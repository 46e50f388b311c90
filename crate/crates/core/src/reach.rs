//! Reach of closed planar curves and unions of closed curves.
//!
//! Three estimators are provided: the Federer quotient
//! `inf |y − x|² / (2·dist(y − x, Tan(x)))` over well-separated vertex pairs
//! capped by `1/κ_max`, a brute-force ambient-grid search for points without
//! a unique nearest point, and the injectivity radius of the normal maps.

use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;

use crate::geometry::{
    default_curvature_window, estimate_curvature, estimate_tangent, offset_curve,
    point_segment_distance, ClosedCurve, OffsetSide, Point,
};
use crate::{Error, Result};

/// Minimum number of vertices for a reach estimate.
pub const MIN_VERTICES: usize = 8;
/// Arc-length separation, in mean vertex spacings, that makes two vertices
/// "well separated".
pub const DEFAULT_SEPARATION_FACTOR: f64 = 5.0;
/// A bottleneck quotient must undercut the curvature cap by this factor to be
/// reported as the active constraint.
const BOTTLENECK_RATIO: f64 = 0.99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReachMethod {
    Federer,
    Bruteforce,
    OffsetInjectivity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReachKind {
    /// Realized by two distant arcs facing each other.
    Bottleneck,
    /// Realized by curvature alone.
    Focal,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReachEstimate {
    pub value: f64,
    pub method: ReachMethod,
    /// The realizing pair, present for bottlenecks.
    pub witness: Option<(Point, Point)>,
    pub kind: ReachKind,
}

/// Two curve points with a common normal line; the reach-realizing pair of a
/// bottleneck.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleNormalPair {
    pub p: Point,
    pub q: Point,
    pub midpoint: Point,
    /// Angle between the tangent lines at `p` and `q`, in `[0, π/2]`.
    pub tangent_angle_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FedererOptions {
    /// Menger window; `None` uses six mean vertex spacings per curve.
    pub curvature_window: Option<f64>,
    pub separation_factor: f64,
    /// Tangents from the chord between the points at `±window/2` arc length;
    /// `None` uses the central difference of the neighbouring vertices.
    pub tangent_window: Option<f64>,
}

impl Default for FedererOptions {
    fn default() -> Self {
        Self {
            curvature_window: None,
            separation_factor: DEFAULT_SEPARATION_FACTOR,
            tangent_window: None,
        }
    }
}

/// Per-curve data shared by the pair scans.
struct Sampled<'a> {
    curve: &'a ClosedCurve,
    tangents: Vec<Point>,
    arc: Vec<f64>,
    perimeter: f64,
    separation: f64,
}

impl<'a> Sampled<'a> {
    fn new(
        curve: &'a ClosedCurve,
        separation_factor: f64,
        tangent_window: Option<f64>,
    ) -> Result<Self> {
        if curve.len() < MIN_VERTICES {
            return Err(Error::Resolution(format!(
                "reach needs at least {MIN_VERTICES} vertices, got {}",
                curve.len()
            )));
        }
        let arc_length = curve.arc_length();
        Ok(Self {
            curve,
            tangents: (0..curve.len())
                .map(|i| match tangent_window {
                    Some(w) => {
                        let s = arc_length.at_vertex(i);
                        (arc_length.point_at(s + 0.5 * w) - arc_length.point_at(s - 0.5 * w))
                            .normalized()
                    }
                    None => estimate_tangent(curve, i),
                })
                .collect(),
            arc: (0..curve.len()).map(|i| arc_length.at_vertex(i)).collect(),
            perimeter: arc_length.perimeter(),
            separation: separation_factor * curve.spacing_hint(),
        })
    }

    fn separated(&self, i: usize, j: usize) -> bool {
        let d = (self.arc[i] - self.arc[j]).abs();
        d.min(self.perimeter - d) >= self.separation
    }
}

fn max_curvature(curves: &[Sampled], window: Option<f64>) -> Result<Vec<Vec<f64>>> {
    curves
        .iter()
        .map(|s| {
            let w = window.unwrap_or_else(|| default_curvature_window(s.curve));
            estimate_curvature(s.curve, w)
        })
        .collect()
}

/// Federer-quotient reach of a single curve.
pub fn reach_federer(curve: &ClosedCurve) -> Result<ReachEstimate> {
    reach_federer_with(std::slice::from_ref(curve), &FedererOptions::default())
}

/// Federer-quotient reach of the union of `curves`; pairs on different
/// curves count as separated.
pub fn reach_federer_with(
    curves: &[ClosedCurve],
    options: &FedererOptions,
) -> Result<ReachEstimate> {
    let scan = federer_scan(curves, options)?;
    let kappa_max = scan.kappa_max.iter().cloned().fold(0.0, f64::max);
    let best = scan
        .per_vertex
        .into_iter()
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("curves have vertices");
    Ok(federer_estimate(best, kappa_max))
}

/// One Federer estimate per curve of a union: the quotient ranges over pairs
/// with `x` on that curve and `y` anywhere in the union, capped by the
/// curve's own maximal curvature. The union reach is the smallest entry.
pub fn reach_federer_components(
    curves: &[ClosedCurve],
    options: &FedererOptions,
) -> Result<Vec<ReachEstimate>> {
    let scan = federer_scan(curves, options)?;
    let mut start = 0;
    Ok(curves
        .iter()
        .zip(&scan.kappa_max)
        .map(|(c, &k)| {
            let part = &scan.per_vertex[start..start + c.len()];
            start += c.len();
            let best = part
                .iter()
                .cloned()
                .reduce(|a, b| if b.0 < a.0 { b } else { a })
                .expect("curve has vertices");
            federer_estimate(best, k)
        })
        .collect())
}

struct FedererScan {
    /// Smallest quotient per vertex, in curve order, with its pair.
    per_vertex: Vec<(f64, Point, Point)>,
    kappa_max: Vec<f64>,
}

fn federer_scan(curves: &[ClosedCurve], options: &FedererOptions) -> Result<FedererScan> {
    if curves.is_empty() {
        return Err(Error::domain("no curves given"));
    }
    let sampled: Vec<Sampled> = curves
        .iter()
        .map(|c| Sampled::new(c, options.separation_factor, options.tangent_window))
        .collect::<Result<_>>()?;
    let kappa = max_curvature(&sampled, options.curvature_window)?;
    let kappa_max = kappa
        .iter()
        .map(|k| k.iter().cloned().fold(0.0, f64::max))
        .collect();

    let index: Vec<(usize, usize)> = sampled
        .iter()
        .enumerate()
        .flat_map(|(c, s)| (0..s.curve.len()).map(move |i| (c, i)))
        .collect();
    let per_vertex = index
        .par_iter()
        .map(|&(ca, i)| {
            let a = &sampled[ca];
            let x = a.curve.vertex(i);
            let t = a.tangents[i];
            let mut best = (f64::INFINITY, x, x);
            for (cb, b) in sampled.iter().enumerate() {
                for (j, &y) in b.curve.vertices().iter().enumerate() {
                    if ca == cb && (i == j || !a.separated(i, j)) {
                        continue;
                    }
                    let d = y - x;
                    let d_perp = t.cross(d).abs();
                    if d_perp < 1e-12 {
                        continue;
                    }
                    let q = d.norm_squared() / (2.0 * d_perp);
                    if q < best.0 {
                        best = (q, x, y);
                    }
                }
            }
            best
        })
        .collect();
    Ok(FedererScan {
        per_vertex,
        kappa_max,
    })
}

fn federer_estimate((quotient, x, y): (f64, Point, Point), kappa_max: f64) -> ReachEstimate {
    let cap = if kappa_max > 0.0 {
        1.0 / kappa_max
    } else {
        f64::INFINITY
    };
    if quotient < BOTTLENECK_RATIO * cap {
        ReachEstimate {
            value: quotient,
            method: ReachMethod::Federer,
            witness: Some((x, y)),
            kind: ReachKind::Bottleneck,
        }
    } else {
        ReachEstimate {
            value: quotient.min(cap),
            method: ReachMethod::Federer,
            witness: None,
            kind: ReachKind::Focal,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteforceOptions {
    pub grid_step: f64,
    /// Two near-minima within this distance of each other count as a tie.
    pub tie_tol: f64,
    /// Extra border around the bounding box; `None` uses a tenth of the
    /// larger extent plus two grid steps.
    pub margin: Option<f64>,
    /// Grid offset as a fraction of `grid_step`, each in `[0, 1)`.
    pub jitter: (f64, f64),
    pub separation_factor: f64,
    /// Fraction of a curve that must lie within `tie_tol` of the nearest
    /// distance for a point to count as a focal (circle-centre) tie.
    pub focal_coverage: f64,
}

impl BruteforceOptions {
    pub fn new(grid_step: f64) -> Self {
        Self {
            grid_step,
            tie_tol: 2.0 * grid_step,
            margin: None,
            jitter: (0.0, 0.0),
            separation_factor: DEFAULT_SEPARATION_FACTOR,
            focal_coverage: 0.9,
        }
    }
}

/// Brute-force reach of a single curve with the given grid step and tie
/// tolerance.
pub fn reach_bruteforce(
    curve: &ClosedCurve,
    grid_step: f64,
    tie_tol: f64,
) -> Result<ReachEstimate> {
    let options = BruteforceOptions {
        tie_tol,
        ..BruteforceOptions::new(grid_step)
    };
    reach_bruteforce_with(std::slice::from_ref(curve), &options)
}

/// Smallest distance to the union of `curves` from an ambient grid point
/// whose nearest point is not unique within `tie_tol`.
///
/// A grid point ties when the distance profile along the curves has two
/// local minima in well-separated arcs that agree within `tie_tol` (the
/// reported radius is their mean), or when the near-minimum set covers most
/// of a curve (a circle centre, reported at the nearest distance). Returns
/// an infinite estimate when no grid point ties.
///
/// Grid points whose nearest distance already exceeds the best tie found so
/// far cannot improve it and are skipped; the result does not depend on the
/// visiting order.
pub fn reach_bruteforce_with(
    curves: &[ClosedCurve],
    options: &BruteforceOptions,
) -> Result<ReachEstimate> {
    let h = options.grid_step;
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::parameter(format!(
            "grid step must be positive, got {h}"
        )));
    }
    if !(options.tie_tol >= h) {
        return Err(Error::parameter(format!(
            "tie tolerance {} is below the grid step {h}",
            options.tie_tol
        )));
    }
    if curves.is_empty() {
        return Err(Error::domain("no curves given"));
    }

    let profiles: Vec<Profile> = curves
        .iter()
        .map(|c| Profile::new(c, options.separation_factor))
        .collect();
    let (mut lo, mut hi) = curves[0].bounding_box();
    for c in &curves[1..] {
        let (a, b) = c.bounding_box();
        lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
        hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
    }
    let margin = options
        .margin
        .unwrap_or(0.1 * (hi.x - lo.x).max(hi.y - lo.y) + 2.0 * h);
    let start = Point::new(
        lo.x - margin + options.jitter.0 * h,
        lo.y - margin + options.jitter.1 * h,
    );
    let nx = ((hi.x - lo.x + 2.0 * margin) / h).ceil() as usize + 1;
    let ny = ((hi.y - lo.y + 2.0 * margin) / h).ceil() as usize + 1;

    let index = SegmentIndex::new(&profiles, h);
    let bound = AtomicU64::new(f64::INFINITY.to_bits());
    // rows from the middle outwards find a small tie early
    let mut rows: Vec<usize> = (0..ny).collect();
    rows.sort_by_key(|&r| (2 * r).abs_diff(ny));
    let best = rows
        .par_iter()
        .map(|&row| {
            let mut best: Option<(Tie, usize, usize)> = None;
            for col in 0..nx {
                let p = Point::new(start.x + col as f64 * h, start.y + row as f64 * h);
                let limit = f64::from_bits(bound.load(AtomicOrdering::Relaxed));
                if let Some(t) = tie_at(p, &profiles, &index, limit, options) {
                    bound.fetch_min_f64(t.value);
                    if best.is_none_or(|b| (t.value, row, col) < (b.0.value, b.1, b.2)) {
                        best = Some((t, row, col));
                    }
                }
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if (y.0.value, y.1, y.2) < (x.0.value, x.1, x.2) {
                    y
                } else {
                    x
                }),
                (x, None) => x,
                (None, y) => y,
            },
        );

    Ok(match best.map(|b| b.0) {
        None => ReachEstimate {
            value: f64::INFINITY,
            method: ReachMethod::Bruteforce,
            witness: None,
            kind: ReachKind::Focal,
        },
        Some(t) => match t.feet {
            // two feet roughly facing each other across the tie point
            Some((a, b)) if a.distance(b) >= 1.5 * t.value => ReachEstimate {
                value: t.value,
                method: ReachMethod::Bruteforce,
                witness: Some((a, b)),
                kind: ReachKind::Bottleneck,
            },
            _ => ReachEstimate {
                value: t.value,
                method: ReachMethod::Bruteforce,
                witness: None,
                kind: ReachKind::Focal,
            },
        },
    })
}

trait FetchMinF64 {
    fn fetch_min_f64(&self, v: f64);
}

impl FetchMinF64 for AtomicU64 {
    fn fetch_min_f64(&self, v: f64) {
        // nonnegative floats order like their bit patterns
        self.fetch_min(v.to_bits(), AtomicOrdering::Relaxed);
    }
}

struct Profile<'a> {
    curve: &'a ClosedCurve,
    mid_arc: Vec<f64>,
    lengths: Vec<f64>,
    perimeter: f64,
    separation: f64,
}

impl<'a> Profile<'a> {
    fn new(curve: &'a ClosedCurve, separation_factor: f64) -> Self {
        let lengths: Vec<f64> = curve.segments().map(|(a, b)| a.distance(b)).collect();
        let mut mid_arc = Vec::with_capacity(lengths.len());
        let mut s = 0.0;
        for &l in &lengths {
            mid_arc.push(s + 0.5 * l);
            s += l;
        }
        Self {
            curve,
            mid_arc,
            lengths,
            perimeter: s,
            separation: separation_factor * curve.spacing_hint(),
        }
    }

    fn separated(&self, i: usize, j: usize) -> bool {
        let d = (self.mid_arc[i] - self.mid_arc[j]).abs();
        d.min(self.perimeter - d) >= self.separation
    }

    fn distance(&self, k: usize, p: Point) -> f64 {
        let (a, b) = self.curve.segment(k);
        point_segment_distance(p, a, b)
    }
}

/// Uniform bucket grid over segment bounding boxes.
struct SegmentIndex {
    origin: Point,
    cell: f64,
    nx: usize,
    ny: usize,
    buckets: Vec<Vec<(u32, u32)>>,
}

impl SegmentIndex {
    fn new(profiles: &[Profile], grid_step: f64) -> Self {
        let mean_len = profiles.iter().map(|p| p.perimeter).sum::<f64>()
            / profiles.iter().map(|p| p.lengths.len()).sum::<usize>() as f64;
        let (mut lo, mut hi) = profiles[0].curve.bounding_box();
        for p in &profiles[1..] {
            let (a, b) = p.curve.bounding_box();
            lo = Point::new(lo.x.min(a.x), lo.y.min(a.y));
            hi = Point::new(hi.x.max(b.x), hi.y.max(b.y));
        }
        let cell = (4.0 * mean_len).max(4.0 * grid_step).max(1e-300);
        let nx = ((hi.x - lo.x) / cell).floor() as usize + 1;
        let ny = ((hi.y - lo.y) / cell).floor() as usize + 1;
        let mut buckets = vec![Vec::new(); nx * ny];
        for (c, prof) in profiles.iter().enumerate() {
            for (k, (a, b)) in prof.curve.segments().enumerate() {
                let (i0, j0) = Self::cell_of(lo, cell, a.x.min(b.x), a.y.min(b.y));
                let (i1, j1) = Self::cell_of(lo, cell, a.x.max(b.x), a.y.max(b.y));
                for j in j0..=j1.min(ny - 1) {
                    for i in i0..=i1.min(nx - 1) {
                        buckets[j * nx + i].push((c as u32, k as u32));
                    }
                }
            }
        }
        Self {
            origin: lo,
            cell,
            nx,
            ny,
            buckets,
        }
    }

    fn cell_of(origin: Point, cell: f64, x: f64, y: f64) -> (usize, usize) {
        (
            ((x - origin.x) / cell).floor().max(0.0) as usize,
            ((y - origin.y) / cell).floor().max(0.0) as usize,
        )
    }

    /// Distance from `p` to the box of bucket `(i, j)`.
    fn bucket_distance(&self, p: Point, i: usize, j: usize) -> f64 {
        let x0 = self.origin.x + i as f64 * self.cell;
        let y0 = self.origin.y + j as f64 * self.cell;
        let dx = (x0 - p.x).max(p.x - x0 - self.cell).max(0.0);
        let dy = (y0 - p.y).max(p.y - y0 - self.cell).max(0.0);
        dx.hypot(dy)
    }

    /// Calls `visit` for every bucket whose box lies within `radius` of `p`.
    fn for_buckets_within(&self, p: Point, radius: f64, mut visit: impl FnMut(&[(u32, u32)])) {
        let fi = |x: f64| ((x - self.origin.x) / self.cell).floor();
        let fj = |y: f64| ((y - self.origin.y) / self.cell).floor();
        let i0 = fi(p.x - radius).max(0.0);
        let i1 = fi(p.x + radius).min((self.nx - 1) as f64);
        let j0 = fj(p.y - radius).max(0.0);
        let j1 = fj(p.y + radius).min((self.ny - 1) as f64);
        if i0 > i1 || j0 > j1 {
            return;
        }
        for j in j0 as usize..=j1 as usize {
            for i in i0 as usize..=i1 as usize {
                let b = &self.buckets[j * self.nx + i];
                if !b.is_empty() && self.bucket_distance(p, i, j) <= radius {
                    visit(b);
                }
            }
        }
    }

    /// Nearest segment within `limit`, searching rings of buckets outwards.
    fn nearest(&self, p: Point, profiles: &[Profile], limit: f64) -> Option<(f64, usize, usize)> {
        let mut best: Option<(f64, usize, usize)> = None;
        let reach_all = self.cell * (self.nx.max(self.ny) as f64 + 1.0);
        let mut radius = self.cell;
        loop {
            let r = radius.min(limit);
            self.for_buckets_within(p, r, |b| {
                for &(c, k) in b {
                    let d = profiles[c as usize].distance(k as usize, p);
                    let cand = (d, c as usize, k as usize);
                    if best.is_none_or(|x| (cand.0, cand.1, cand.2) < (x.0, x.1, x.2)) {
                        best = Some(cand);
                    }
                }
            });
            if let Some(b) = best {
                if b.0 <= r {
                    return (b.0 <= limit).then_some(b);
                }
            }
            let outside = {
                let (lo, hi) = (self.origin, self.cell);
                let dx = (lo.x - p.x)
                    .max(p.x - (lo.x + hi * self.nx as f64))
                    .max(0.0);
                let dy = (lo.y - p.y)
                    .max(p.y - (lo.y + hi * self.ny as f64))
                    .max(0.0);
                dx.hypot(dy)
            };
            if r >= limit || radius > outside + reach_all {
                return best.filter(|b| b.0 <= limit);
            }
            radius *= 2.0;
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Tie {
    value: f64,
    feet: Option<(Point, Point)>,
}

fn foot(curve: &ClosedCurve, k: usize, p: Point) -> Point {
    let (a, b) = curve.segment(k);
    let ab = b - a;
    let len2 = ab.norm_squared();
    if len2 == 0.0 {
        return a;
    }
    a + ab * ((p - a).dot(ab) / len2).clamp(0.0, 1.0)
}

/// The tie at `p`, if any; points farther than `limit` from the curves are
/// skipped, since every tie there is worth at least their distance.
fn tie_at(
    p: Point,
    profiles: &[Profile],
    index: &SegmentIndex,
    limit: f64,
    options: &BruteforceOptions,
) -> Option<Tie> {
    let (d1, c1, k1) = index.nearest(p, profiles, limit)?;
    let cutoff = d1 + options.tie_tol;

    let mut m2: Option<(f64, usize, usize)> = None;
    let mut near_length = 0.0;
    index.for_buckets_within(p, cutoff, |b| {
        for &(c, k) in b {
            let (c, k) = (c as usize, k as usize);
            let prof = &profiles[c];
            let dk = prof.distance(k, p);
            if dk > cutoff {
                continue;
            }
            // a segment spanning several buckets is seen once per bucket; count
            // it only from the bucket holding its first vertex
            let first = prof.curve.vertex(k);
            let home = SegmentIndex::cell_of(index.origin, index.cell, first.x, first.y);
            let (bi, bj) = (home.0.min(index.nx - 1), home.1.min(index.ny - 1));
            if !std::ptr::eq(b.as_ptr(), index.buckets[bj * index.nx + bi].as_ptr()) {
                continue;
            }
            if c == c1 {
                near_length += prof.lengths[k];
            }
            if m2.is_some_and(|m| (dk, c, k) >= m) {
                continue;
            }
            if c == c1 && !prof.separated(k, k1) {
                continue;
            }
            let n = prof.curve.len();
            let local_min =
                dk <= prof.distance((k + n - 1) % n, p) && dk <= prof.distance((k + 1) % n, p);
            if local_min {
                m2 = Some((dk, c, k));
            }
        }
    });

    if let Some((d2, c2, k2)) = m2 {
        return Some(Tie {
            value: 0.5 * (d1 + d2),
            feet: Some((
                foot(profiles[c1].curve, k1, p),
                foot(profiles[c2].curve, k2, p),
            )),
        });
    }
    if near_length >= options.focal_coverage * profiles[c1].perimeter {
        return Some(Tie {
            value: d1,
            feet: None,
        });
    }
    None
}

/// Acceptance slack for the double-normal alignment test.
const ALIGNMENT_ANGLE_DEG: f64 = 2.0;
/// Pairs whose half-length is within this fraction of the radius of
/// curvature nearby are explained by curvature alone.
const FOCAL_FRACTION: f64 = 0.9;
/// A bottleneck half-length above this multiple of `1/κ_max` is not the
/// active constraint.
const FOCAL_CAP_SLACK: f64 = 1.03;

/// Shortest well-separated double normal of the curve, that is the pair of
/// facing points realizing a bottleneck. Pairs that are explained by local
/// curvature (points of a circle seen from its centre) do not count; if none
/// remain, or the shortest is longer than the curvature cap allows, the reach
/// is focal and [`Error::FocalOnly`] is returned.
pub fn double_normal_pair(curve: &ClosedCurve) -> Result<DoubleNormalPair> {
    double_normal_pair_with(curve, &FedererOptions::default())
}

pub fn double_normal_pair_with(
    curve: &ClosedCurve,
    options: &FedererOptions,
) -> Result<DoubleNormalPair> {
    let sampled = Sampled::new(curve, options.separation_factor, options.tangent_window)?;
    let window = options
        .curvature_window
        .unwrap_or_else(|| default_curvature_window(curve));
    let kappa = neighborhood_max(
        &estimate_curvature(curve, window)?,
        (window / curve.spacing_hint()).ceil() as usize,
    );
    let kappa_max = kappa.iter().cloned().fold(0.0, f64::max);
    let spacing = curve.spacing_hint();
    let sin_tol = ALIGNMENT_ANGLE_DEG.to_radians().sin();
    let n = curve.len();

    let best = (0..n)
        .into_par_iter()
        .map(|i| {
            let p = curve.vertex(i);
            let tp = sampled.tangents[i];
            let mut best: Option<(f64, usize, usize)> = None;
            for j in (i + 1)..n {
                if !sampled.separated(i, j) {
                    continue;
                }
                let q = curve.vertex(j);
                let len = p.distance(q);
                if len == 0.0 || best.is_some_and(|b| len >= b.0) {
                    continue;
                }
                let u = (q - p) / len;
                let defect = u.dot(tp).abs().max(u.dot(sampled.tangents[j]).abs());
                if defect > sin_tol + 1.5 * spacing / len {
                    continue;
                }
                let half = 0.5 * len;
                if kappa[i] * half >= FOCAL_FRACTION || kappa[j] * half >= FOCAL_FRACTION {
                    continue;
                }
                best = Some((len, i, j));
            }
            best
        })
        .reduce(
            || None,
            |a, b| match (a, b) {
                (Some(x), Some(y)) => Some(if (y.0, y.1, y.2) < (x.0, x.1, x.2) {
                    y
                } else {
                    x
                }),
                (x, None) => x,
                (None, y) => y,
            },
        );

    let (len, i, j) = best.ok_or(Error::FocalOnly)?;
    if kappa_max > 0.0 && 0.5 * len > FOCAL_CAP_SLACK / kappa_max {
        return Err(Error::FocalOnly);
    }
    let (p, q) = (curve.vertex(i), curve.vertex(j));
    let cos_gap = sampled.tangents[i].dot(sampled.tangents[j]).abs().min(1.0);
    Ok(DoubleNormalPair {
        p,
        q,
        midpoint: p.midpoint(q),
        tangent_angle_gap: cos_gap.acos(),
    })
}

/// Cyclic running maximum over `±radius` neighbours.
fn neighborhood_max(values: &[f64], radius: usize) -> Vec<f64> {
    let n = values.len();
    let radius = radius.min(n / 2);
    (0..n)
        .map(|i| {
            (0..=2 * radius)
                .map(|k| values[(i + n + k - radius) % n])
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Supremal `ε ≤ eps_hi` for which both normal maps at distance `ε` are
/// injective, found by bisection to within `tol`.
pub fn injectivity_radius(curve: &ClosedCurve, eps_hi: f64, tol: f64) -> Result<f64> {
    if !(tol > 0.0 && eps_hi > tol && eps_hi.is_finite()) {
        return Err(Error::parameter(format!(
            "need eps_hi > tol > 0, got eps_hi = {eps_hi}, tol = {tol}"
        )));
    }
    curve.validate_simple()?;
    let injective = |eps: f64| -> Result<bool> {
        Ok(offset_curve(curve, eps, OffsetSide::Outer)?.injective
            && offset_curve(curve, eps, OffsetSide::Inner)?.injective)
    };
    if injective(eps_hi)? {
        return Ok(eps_hi);
    }
    let (mut lo, mut hi) = (0.0, eps_hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if injective(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Default bisection tolerance: `1e-3` of the curve's diameter bound.
pub fn default_injectivity_tol(curve: &ClosedCurve) -> f64 {
    1e-3 * curve.diameter_bound()
}

/// [`injectivity_radius`] wrapped as a reach estimate.
pub fn reach_offset(curve: &ClosedCurve, eps_hi: f64, tol: f64) -> Result<ReachEstimate> {
    Ok(ReachEstimate {
        value: injectivity_radius(curve, eps_hi, tol)?,
        method: ReachMethod::OffsetInjectivity,
        witness: None,
        kind: ReachKind::Focal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn federer_circle_is_focal() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 1000);
        let r = reach_federer(&c).unwrap();
        assert!((r.value - 1.0).abs() < 0.01, "{r:?}");
        assert_eq!(r.kind, ReachKind::Focal);
    }

    #[test]
    fn federer_stadium() {
        let st = shapes::stadium(1.0, 4.0, 0.01);
        let r = reach_federer(&st).unwrap();
        assert!((r.value - 1.0).abs() < 0.02, "{r:?}");
    }

    #[test]
    fn federer_dumbbell_is_bottleneck() {
        let d = shapes::dumbbell(1.0, 0.2, 0.005);
        let r = reach_federer(&d).unwrap();
        assert!((r.value - 0.2).abs() < 0.2 * 0.03, "{r:?}");
        assert_eq!(r.kind, ReachKind::Bottleneck);
        let (x, y) = r.witness.unwrap();
        assert!(x.x.abs() < 1.0 && (x.y.abs() - 0.2).abs() < 1e-9 && x.y * y.y < 0.0);
    }

    #[test]
    fn components_see_their_neighbours() {
        let curves = [
            shapes::circle(Point::new(-1.2, 0.0), 1.0, 600),
            shapes::circle(Point::new(1.2, 0.0), 1.0, 600),
            shapes::circle(Point::new(0.0, 10.0), 2.0, 1200),
        ];
        let est = reach_federer_components(&curves, &FedererOptions::default()).unwrap();
        for e in &est[..2] {
            assert_eq!(e.kind, ReachKind::Bottleneck);
            assert!((e.value - 0.2).abs() < 0.006, "{e:?}");
        }
        assert_eq!(est[2].kind, ReachKind::Focal);
        assert!((est[2].value - 2.0).abs() < 0.02, "{:?}", est[2]);
        let union = reach_federer_with(&curves, &FedererOptions::default()).unwrap();
        let least = est.iter().map(|e| e.value).fold(f64::INFINITY, f64::min);
        assert_eq!(union.value, least);
    }

    #[test]
    fn federer_needs_enough_vertices() {
        let sq = shapes::polygon(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert!(matches!(reach_federer(&sq), Err(Error::Resolution(_))));
    }

    #[test]
    fn bruteforce_circle_and_dumbbell() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 1000);
        let r = reach_bruteforce(&c, 0.01, 0.02).unwrap();
        assert!((r.value - 1.0).abs() < 0.02, "{r:?}");

        let d = shapes::dumbbell(1.0, 0.2, 0.01);
        let r = reach_bruteforce(&d, 0.01, 0.02).unwrap();
        assert!((r.value - 0.2).abs() < 0.02, "{r:?}");
        assert_eq!(r.kind, ReachKind::Bottleneck);
    }

    #[test]
    fn bruteforce_parameter_checks() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 100);
        assert!(matches!(
            reach_bruteforce(&c, 0.0, 0.1),
            Err(Error::Parameter(_))
        ));
        assert!(matches!(
            reach_bruteforce(&c, 0.1, 0.05),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn double_normals() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 1000);
        assert_eq!(double_normal_pair(&c), Err(Error::FocalOnly));

        let d = shapes::dumbbell(1.0, 0.2, 0.005);
        let pair = double_normal_pair(&d).unwrap();
        assert!(pair.tangent_angle_gap < 2f64.to_radians());
        assert!(pair.p.y * pair.q.y < 0.0 && pair.p.x.abs() < 1.0);
        assert!((pair.p.distance(pair.midpoint) - pair.q.distance(pair.midpoint)).abs() < 1e-12);

        let st = shapes::stadium(1.0, 4.0, 0.01);
        let pair = double_normal_pair(&st).unwrap();
        assert!(pair.tangent_angle_gap < 1f64.to_radians());
        assert!((pair.p.y.abs() - 1.0).abs() < 1e-9 && (pair.q.y.abs() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn injectivity_radius_examples() {
        let c = shapes::circle(Point::ORIGIN, 1.0, 512);
        let tol = 1e-3;
        let r = injectivity_radius(&c, 3.0, tol).unwrap();
        assert!((r - 1.0).abs() < tol + 0.01, "{r}");

        let d = shapes::dumbbell(1.0, 0.2, 0.005);
        let r = injectivity_radius(&d, 2.0, tol).unwrap();
        assert!((r - 0.2).abs() < tol + 0.2 * 0.03, "{r}");

        assert!(matches!(
            injectivity_radius(&c, 0.1, 0.2),
            Err(Error::Parameter(_))
        ));
    }
}
