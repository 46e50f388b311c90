//! Analytic closed curves sampled as polylines.
//!
//! All shapes are counterclockwise. Piecewise shapes (stadium, dumbbell) are
//! built from line and circular-arc pieces sampled at a target arc-length
//! spacing, with every piece junction landing on a vertex.

use std::f64::consts::PI;

use crate::geometry::{ClosedCurve, Point};

/// Regular `n`-gon inscribed in the circle of radius `r`; vertex 0 at angle 0.
pub fn circle(center: Point, r: f64, n: usize) -> ClosedCurve {
    ClosedCurve::new(
        (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                center + Point::new(r * t.cos(), r * t.sin())
            })
            .collect(),
    )
    .expect("circle needs n >= 3")
}

/// Ellipse `(a cos t, b sin t)` sampled uniformly in arc length.
pub fn ellipse(center: Point, a: f64, b: f64, n: usize) -> ClosedCurve {
    // dense parameter sampling, then invert the arc-length table
    let dense = 64 * n;
    let pts: Vec<Point> = (0..dense)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / dense as f64;
            Point::new(a * t.cos(), b * t.sin())
        })
        .collect();
    let mut cum = vec![0.0];
    for k in 0..dense {
        let d = pts[k].distance(pts[(k + 1) % dense]);
        cum.push(cum[k] + d);
    }
    let total = cum[dense];
    let mut out = Vec::with_capacity(n);
    let mut seg = 0;
    for k in 0..n {
        let s = total * k as f64 / n as f64;
        while cum[seg + 1] < s {
            seg += 1;
        }
        let t0 = 2.0 * PI * seg as f64 / dense as f64;
        let t1 = 2.0 * PI * (seg + 1) as f64 / dense as f64;
        let f = (s - cum[seg]) / (cum[seg + 1] - cum[seg]);
        let t = t0 + f * (t1 - t0);
        out.push(center + Point::new(a * t.cos(), b * t.sin()));
    }
    ClosedCurve::new(out).expect("ellipse needs n >= 3")
}

/// Closed polygon through the given corners.
pub fn polygon(corners: &[(f64, f64)]) -> ClosedCurve {
    ClosedCurve::new(corners.iter().map(|&(x, y)| Point::new(x, y)).collect())
        .expect("polygon needs at least three distinct corners")
}

/// A piece of a piecewise-smooth path.
#[derive(Debug, Clone, Copy)]
pub enum Piece {
    Line {
        from: Point,
        to: Point,
    },
    /// Arc of the circle `center, radius` from `start` radians sweeping
    /// `sweep` radians (positive = counterclockwise).
    Arc {
        center: Point,
        radius: f64,
        start: f64,
        sweep: f64,
    },
}

impl Piece {
    pub fn length(&self) -> f64 {
        match *self {
            Piece::Line { from, to } => from.distance(to),
            Piece::Arc { radius, sweep, .. } => radius * sweep.abs(),
        }
    }

    /// Point at fraction `f ∈ [0, 1]` of the piece.
    pub fn at(&self, f: f64) -> Point {
        match *self {
            Piece::Line { from, to } => from.lerp(to, f),
            Piece::Arc {
                center,
                radius,
                start,
                sweep,
            } => {
                let t = start + f * sweep;
                center + Point::new(radius * t.cos(), radius * t.sin())
            }
        }
    }
}

/// Samples consecutive pieces at roughly `spacing`, dropping each piece's end
/// point (it is the next piece's start).
pub fn sample_pieces(pieces: &[Piece], spacing: f64) -> ClosedCurve {
    let mut pts = Vec::new();
    for piece in pieces {
        let n = (piece.length() / spacing).round().max(1.0) as usize;
        for k in 0..n {
            pts.push(piece.at(k as f64 / n as f64));
        }
    }
    ClosedCurve::new(pts).expect("piecewise path must be non-degenerate")
}

/// Stadium: two straight runs of length `side_length` at `y = ±cap_radius`,
/// closed by half-circle caps centred at `(±side_length/2, 0)`.
pub fn stadium(cap_radius: f64, side_length: f64, spacing: f64) -> ClosedCurve {
    let r = cap_radius;
    let hl = 0.5 * side_length;
    let pieces = [
        Piece::Line {
            from: Point::new(-hl, -r),
            to: Point::new(hl, -r),
        },
        Piece::Arc {
            center: Point::new(hl, 0.0),
            radius: r,
            start: -0.5 * PI,
            sweep: PI,
        },
        Piece::Line {
            from: Point::new(hl, r),
            to: Point::new(-hl, r),
        },
        Piece::Arc {
            center: Point::new(-hl, 0.0),
            radius: r,
            start: 0.5 * PI,
            sweep: PI,
        },
    ];
    sample_pieces(&pieces, spacing)
}

/// Geometry of a two-lobe dumbbell: lobes of radius `lobe_radius` centred at
/// `(±lobe_offset, 0)`, joined by a straight neck with walls at
/// `y = ±half_gap`; walls and lobes are blended by concave fillets of radius
/// `fillet_radius`, so the curve is C¹ with piecewise-constant curvature.
#[derive(Debug, Clone, Copy)]
pub struct Dumbbell {
    pub lobe_radius: f64,
    pub half_gap: f64,
    pub fillet_radius: f64,
    pub lobe_offset: f64,
}

impl Dumbbell {
    /// Lobe offset `2R` and fillet radius `R/2`.
    pub fn new(lobe_radius: f64, half_gap: f64) -> Self {
        Self {
            lobe_radius,
            half_gap,
            fillet_radius: 0.5 * lobe_radius,
            lobe_offset: 2.0 * lobe_radius,
        }
    }

    /// x-coordinate where the neck walls end and the fillets start.
    pub fn wall_end(&self) -> f64 {
        let (r, h, f) = (self.lobe_radius, self.half_gap, self.fillet_radius);
        self.lobe_offset - ((r + f).powi(2) - (h + f).powi(2)).sqrt()
    }

    pub fn pieces(&self) -> Vec<Piece> {
        let (r, h, f, c) = (
            self.lobe_radius,
            self.half_gap,
            self.fillet_radius,
            self.lobe_offset,
        );
        let xf = self.wall_end();
        assert!(xf > 0.0, "dumbbell neck has non-positive length");
        let phi = (h + f).atan2(c - xf);
        let fillet_sweep = 0.5 * PI - phi;
        let lobe_sweep = 2.0 * (PI - phi);
        vec![
            Piece::Line {
                from: Point::new(-xf, -h),
                to: Point::new(xf, -h),
            },
            Piece::Arc {
                center: Point::new(xf, -h - f),
                radius: f,
                start: 0.5 * PI,
                sweep: -fillet_sweep,
            },
            Piece::Arc {
                center: Point::new(c, 0.0),
                radius: r,
                start: -(PI - phi),
                sweep: lobe_sweep,
            },
            Piece::Arc {
                center: Point::new(xf, h + f),
                radius: f,
                start: -phi,
                sweep: -fillet_sweep,
            },
            Piece::Line {
                from: Point::new(xf, h),
                to: Point::new(-xf, h),
            },
            Piece::Arc {
                center: Point::new(-xf, h + f),
                radius: f,
                start: -0.5 * PI,
                sweep: -fillet_sweep,
            },
            Piece::Arc {
                center: Point::new(-c, 0.0),
                radius: r,
                start: phi,
                sweep: lobe_sweep,
            },
            Piece::Arc {
                center: Point::new(-xf, -h - f),
                radius: f,
                start: PI - phi,
                sweep: -fillet_sweep,
            },
        ]
    }

    pub fn sample(&self, spacing: f64) -> ClosedCurve {
        sample_pieces(&self.pieces(), spacing)
    }

    /// Even-odd membership test against the exact (unsampled) outline.
    pub fn contains(&self, p: Point) -> bool {
        let (r, h, f, c) = (
            self.lobe_radius,
            self.half_gap,
            self.fillet_radius,
            self.lobe_offset,
        );
        let xf = self.wall_end();
        let in_lobe = p.distance(Point::new(c, 0.0)) <= r || p.distance(Point::new(-c, 0.0)) <= r;
        if in_lobe {
            return true;
        }
        // region between the fillet tangent points, below the fillet circles
        let ax = p.x.abs();
        let ay = p.y.abs();
        let tangent_x = xf + f * (c - xf) / (r + f);
        if ax <= xf {
            return ay <= h;
        }
        if ax <= tangent_x {
            let fc = Point::new(xf, h + f);
            return ay <= h + f && Point::new(ax, ay).distance(fc) >= f;
        }
        false
    }
}

/// Dumbbell with lobe radius `lobe_radius` and neck half-gap `half_gap`,
/// sampled at `spacing`.
pub fn dumbbell(lobe_radius: f64, half_gap: f64, spacing: f64) -> ClosedCurve {
    Dumbbell::new(lobe_radius, half_gap).sample(spacing)
}
