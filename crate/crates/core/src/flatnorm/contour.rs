//! Marching squares on pixel centres at the 0.5 iso-level.
//!
//! Contour vertices sit on midpoints between adjacent pixel centres and are
//! keyed in doubled integer coordinates, so chaining is exact. Every segment
//! keeps the inside on its left, which makes outer boundaries
//! counterclockwise and holes clockwise. At a saddle the square centre counts
//! as outside, so diagonal pixels belong to separate components.

use std::collections::HashMap;

use crate::geometry::{ClosedCurve, GridMask, Point};

type Key = (i64, i64);

/// Default number of smoothing passes applied before measurement.
pub const DEFAULT_SMOOTHING_PASSES: usize = 2;

/// Boundary components of `mask` as closed polylines in world coordinates,
/// each smoothed with `smoothing_passes` rounds of a closed 3-point moving
/// average. Components are ordered by their first segment in row-major scan.
pub fn extract_boundary(mask: &GridMask, smoothing_passes: usize) -> Vec<ClosedCurve> {
    let segments = collect_segments(mask);
    if segments.is_empty() {
        return Vec::new();
    }
    let mut by_start: HashMap<Key, usize> = HashMap::with_capacity(segments.len());
    for (k, &(a, _)) in segments.iter().enumerate() {
        let clash = by_start.insert(a, k);
        debug_assert!(clash.is_none(), "two contour segments start at {a:?}");
    }

    let to_world = |(a, b): Key| {
        let o = mask.origin();
        let h = mask.spacing();
        Point::new(
            o.x + h * (0.5 * a as f64 + 0.5),
            o.y + h * (0.5 * b as f64 + 0.5),
        )
    };

    let mut used = vec![false; segments.len()];
    let mut curves = Vec::new();
    for first in 0..segments.len() {
        if used[first] {
            continue;
        }
        let mut loop_pts = Vec::new();
        let mut k = first;
        while !used[k] {
            used[k] = true;
            let (a, b) = segments[k];
            loop_pts.push(to_world(a));
            k = by_start[&b];
        }
        for _ in 0..smoothing_passes {
            loop_pts = smooth_closed(&loop_pts);
        }
        curves.push(
            ClosedCurve::new(loop_pts).expect("marching-squares loops have at least four vertices"),
        );
    }
    curves
}

/// One pass of the closed 3-point moving average.
pub fn smooth_closed(points: &[Point]) -> Vec<Point> {
    let n = points.len();
    (0..n)
        .map(|i| (points[(i + n - 1) % n] + points[i] + points[(i + 1) % n]) / 3.0)
        .collect()
}

/// Directed contour segments for every 2×2 square of pixel centres,
/// including the squares straddling the grid border.
fn collect_segments(mask: &GridMask) -> Vec<(Key, Key)> {
    let (w, h) = (mask.width() as isize, mask.height() as isize);
    let mut out = Vec::new();
    for j in -1..h {
        for i in -1..w {
            // corners counterclockwise from bottom-left
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let inside = corners.map(|(ci, cj)| mask.get_or_false(ci, cj));
            if inside.iter().all(|&v| v) || inside.iter().all(|&v| !v) {
                continue;
            }
            let doubled = corners.map(|(ci, cj)| (2 * ci as i64, 2 * cj as i64));
            let edge_mid = |k: usize| {
                let (a, b) = (doubled[k], doubled[(k + 1) % 4]);
                ((a.0 + b.0) / 2, (a.1 + b.1) / 2)
            };
            // edge k leaves the inside when corner k is in and corner k+1 is
            // out; the run of inside corners ending at k entered through the
            // edge before the run's first corner
            for k in 0..4 {
                if !(inside[k] && !inside[(k + 1) % 4]) {
                    continue;
                }
                let mut a = k;
                while inside[(a + 3) % 4] {
                    a = (a + 3) % 4;
                }
                out.push((edge_mid(k), edge_mid((a + 3) % 4)));
            }
        }
    }
    out
}
