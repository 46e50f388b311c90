//! Static SVG plots. Output bytes depend only on the inputs.

use std::fmt::Write as _;

use flatreach_core::bound::ConstructionRegions;
use flatreach_core::reach::ReachKind;
use flatreach_core::{ClosedCurve, Point};

use crate::pipeline::VerifyOutcome;

const INPUT_COLOR: &str = "#808080";
const MINIMIZER_COLOR: &str = "#000000";
const WITNESS_COLOR: &str = "#d62728";
const R1_COLOR: &str = "#1f77b4";
const R2_COLOR: &str = "#ff7f0e";
const SSTAR_FILL: &str = "#9ecae1";

/// Accumulates layers in world coordinates (y up) and writes them inside a
/// y-flipping group.
struct Canvas {
    lo: Point,
    hi: Point,
    layers: String,
}

impl Canvas {
    fn new(lo: Point, hi: Point) -> Self {
        Self {
            lo,
            hi,
            layers: String::new(),
        }
    }

    fn stroke_width(&self) -> f64 {
        2e-3 * self.lo.distance(self.hi).max(1e-9)
    }

    fn begin(&mut self, id: &str, stroke: &str, fill: &str) {
        let w = self.stroke_width();
        let _ = writeln!(
            self.layers,
            r#"<g id="{id}" stroke="{stroke}" fill="{fill}" stroke-width="{}">"#,
            num(w)
        );
    }

    fn end(&mut self) {
        self.layers.push_str("</g>\n");
    }

    fn closed_path(&mut self, pts: &[Point]) {
        let mut d = String::new();
        for (k, p) in pts.iter().enumerate() {
            let _ = write!(
                d,
                "{}{} {}",
                if k == 0 { "M" } else { " L" },
                num(p.x),
                num(p.y)
            );
        }
        d.push_str(" Z");
        let _ = writeln!(self.layers, r#"<path d="{d}"/>"#);
    }

    fn line(&mut self, a: Point, b: Point) {
        let _ = writeln!(
            self.layers,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
            num(a.x),
            num(a.y),
            num(b.x),
            num(b.y)
        );
    }

    fn finish(self) -> String {
        let pad = 0.02 * self.lo.distance(self.hi).max(1e-9);
        let (x0, y0) = (self.lo.x - pad, self.lo.y - pad);
        let (w, h) = (
            self.hi.x - self.lo.x + 2.0 * pad,
            self.hi.y - self.lo.y + 2.0 * pad,
        );
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
            num(x0),
            num(-(y0 + h)),
            num(w),
            num(h)
        );
        s.push_str("<g transform=\"scale(1,-1)\" stroke-linejoin=\"round\">\n");
        s.push_str(&self.layers);
        s.push_str("</g>\n</svg>\n");
        s
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn bounds<'a>(points: impl IntoIterator<Item = &'a Point>) -> (Point, Point) {
    points.into_iter().fold(
        (
            Point::new(f64::INFINITY, f64::INFINITY),
            Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        ),
        |(lo, hi), p| {
            (
                Point::new(lo.x.min(p.x), lo.y.min(p.y)),
                Point::new(hi.x.max(p.x), hi.y.max(p.y)),
            )
        },
    )
}

/// Input boundary in grey, minimizer boundary in black, and each bottleneck
/// witness as a red segment.
pub fn verify_plot(outcome: &VerifyOutcome) -> String {
    let (lo, hi) = outcome.input.bounds();
    let mut canvas = Canvas::new(lo, hi);
    canvas.begin("input", INPUT_COLOR, "none");
    for c in &outcome.input_boundary {
        canvas.closed_path(c.vertices());
    }
    canvas.end();
    canvas.begin("minimizer", MINIMIZER_COLOR, "none");
    for m in &outcome.components {
        canvas.closed_path(m.curve.vertices());
    }
    canvas.end();
    canvas.begin("witness", WITNESS_COLOR, "none");
    for m in &outcome.components {
        if let (ReachKind::Bottleneck, Some((a, b))) = (m.reach.kind, m.reach.witness) {
            canvas.line(a, b);
        }
    }
    canvas.end();
    canvas.finish()
}

/// The comparison construction: R₁ in blue, R₂ in orange, S* shaded.
pub fn bound_plot(c: &ConstructionRegions) -> String {
    const N: usize = 128;
    let outline = |r: &flatreach_core::bound::CapRegion| {
        let mut pts = r.upper_arc(N);
        let mut lower = r.lower_arc(N);
        lower.reverse();
        pts.extend(lower);
        pts
    };
    let r1 = outline(&c.r1);
    let r2 = outline(&c.r2);
    let (lo, hi) = bounds(r1.iter().chain(&r2).chain(&c.sstar));
    let mut canvas = Canvas::new(lo, hi);
    canvas.begin("sstar", "none", SSTAR_FILL);
    canvas.closed_path(&c.sstar);
    canvas.end();
    canvas.begin("r1", R1_COLOR, "none");
    canvas.closed_path(&r1);
    canvas.end();
    canvas.begin("r2", R2_COLOR, "none");
    canvas.closed_path(&r2);
    canvas.end();
    canvas.finish()
}

/// Closed curves in black; used by `minimize` and `reach` for quick looks.
pub fn curves_plot(curves: &[ClosedCurve]) -> String {
    let (lo, hi) = bounds(curves.iter().flat_map(|c| c.vertices()));
    let mut canvas = Canvas::new(lo, hi);
    canvas.begin("curves", MINIMIZER_COLOR, "none");
    for c in curves {
        canvas.closed_path(c.vertices());
    }
    canvas.end();
    canvas.finish()
}
