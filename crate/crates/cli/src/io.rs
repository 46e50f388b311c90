//! Shape files: binary masks as PGM (P2 or P5) and polygons as JSON.
//!
//! PGM rows run top to bottom while mask rows run bottom to top, so image
//! row 0 is the mask's last row. Grid placement travels in a header comment
//! of the form `# flatreach origin=<x> <y> spacing=<h>`; files without it
//! load at origin `(0, 0)` with unit spacing.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use flatreach_core::{ClosedCurve, GridMask, Point};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Grey levels at or above this value (out of 255) are inside.
pub const THRESHOLD: u32 = 128;

/// Default raster resolution for polygon inputs: this many pixels across the
/// polygon's bounding-box diagonal.
pub const DEFAULT_RASTER_CELLS: f64 = 256.0;

/// Pixels of empty frame added around a rasterized polygon.
const RASTER_MARGIN: usize = 2;

const META_TAG: &str = "flatreach";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputKind {
    MaskPgm,
    PolygonJson,
}

impl InputKind {
    pub fn from_path(path: &Path) -> Result<Self> {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("pgm") => Ok(InputKind::MaskPgm),
            Some("json") => Ok(InputKind::PolygonJson),
            _ => Err(CliError::Format {
                path: path.to_path_buf(),
                message: "unknown input type; expected a .pgm mask or a .json polygon".into(),
            }),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InputKind::MaskPgm => "mask_pgm",
            InputKind::PolygonJson => "polygon_json",
        }
    }
}

#[derive(Debug, Clone)]
pub enum Shape {
    Mask(GridMask),
    Curve(ClosedCurve),
}

impl Shape {
    /// The shape as a mask; polygons are rasterized at `spacing`, or at the
    /// default resolution when `None`.
    pub fn into_mask(self, spacing: Option<f64>) -> Result<GridMask> {
        match self {
            Shape::Mask(m) => Ok(m),
            Shape::Curve(c) => {
                let h = spacing.unwrap_or_else(|| default_raster_spacing(&c));
                Ok(rasterize(&c, h)?)
            }
        }
    }
}

pub fn load_shape(path: &Path, kind: InputKind) -> Result<Shape> {
    match kind {
        InputKind::MaskPgm => load_pgm(path).map(Shape::Mask),
        InputKind::PolygonJson => load_polygon(path).map(Shape::Curve),
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

// ---------------------------------------------------------------- PGM

pub fn load_pgm(path: &Path) -> Result<GridMask> {
    parse_pgm(&read(path)?).map_err(|e| e.at(path))
}

/// Writes a binary (P5) PGM with the grid placement comment.
pub fn save_pgm(mask: &GridMask, path: &Path) -> Result<()> {
    write(path, &encode_pgm(mask, true))
}

/// Writes a plain (P2) PGM with the grid placement comment.
pub fn save_pgm_ascii(mask: &GridMask, path: &Path) -> Result<()> {
    write(path, &encode_pgm(mask, false))
}

pub fn encode_pgm(mask: &GridMask, binary: bool) -> Vec<u8> {
    let (w, h) = (mask.width(), mask.height());
    let o = mask.origin();
    let mut out = format!(
        "{}\n# {META_TAG} origin={:?} {:?} spacing={:?}\n{w} {h}\n255\n",
        if binary { "P5" } else { "P2" },
        o.x,
        o.y,
        mask.spacing()
    )
    .into_bytes();
    let level = |i, j| if mask.get(i, j) { 255u8 } else { 0 };
    for row in 0..h {
        let j = h - 1 - row;
        if binary {
            out.extend((0..w).map(|i| level(i, j)));
        } else {
            let line: Vec<String> = (0..w).map(|i| level(i, j).to_string()).collect();
            out.extend_from_slice(line.join(" ").as_bytes());
            out.push(b'\n');
        }
    }
    out
}

/// Parse failure before the file name is known.
#[derive(Debug)]
pub struct PgmError {
    pub line: usize,
    pub byte: usize,
    pub message: String,
}

impl PgmError {
    fn at(self, path: &Path) -> CliError {
        CliError::Parse {
            path: path.to_path_buf(),
            line: self.line,
            byte: self.byte,
            message: self.message,
        }
    }
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
    line: usize,
    meta: Option<(Point, f64)>,
}

impl<'a> Cursor<'a> {
    fn error(&self, message: impl Into<String>) -> PgmError {
        PgmError {
            line: self.line,
            byte: self.pos,
            message: message.into(),
        }
    }

    fn bump(&mut self) {
        if self.data[self.pos] == b'\n' {
            self.line += 1;
        }
        self.pos += 1;
    }

    /// Skips whitespace and `#` comments, remembering a placement comment.
    fn skip_blank(&mut self) -> std::result::Result<(), PgmError> {
        while self.pos < self.data.len() {
            match self.data[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' | 0x0b | 0x0c => self.bump(),
                b'#' => {
                    let start = self.pos + 1;
                    while self.pos < self.data.len() && self.data[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                    let text = String::from_utf8_lossy(&self.data[start..self.pos]).into_owned();
                    if let Some(meta) = parse_meta(&text).map_err(|m| self.error(m))? {
                        self.meta = Some(meta);
                    }
                }
                _ => break,
            }
        }
        Ok(())
    }

    fn token(&mut self) -> std::result::Result<&'a [u8], PgmError> {
        self.skip_blank()?;
        let start = self.pos;
        while self.pos < self.data.len()
            && !self.data[self.pos].is_ascii_whitespace()
            && self.data[self.pos] != b'#'
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("unexpected end of file"));
        }
        Ok(&self.data[start..self.pos])
    }

    fn number(&mut self, what: &str) -> std::result::Result<u32, PgmError> {
        self.skip_blank()?;
        let mark = (self.line, self.pos);
        let tok = self.token()?;
        std::str::from_utf8(tok)
            .ok()
            .and_then(|s| s.parse::<u32>().ok())
            .ok_or_else(|| PgmError {
                line: mark.0,
                byte: mark.1,
                message: format!("expected {what}, found {:?}", String::from_utf8_lossy(tok)),
            })
    }
}

/// Reads `flatreach origin=<x> <y> spacing=<h>`; other comments are ignored.
fn parse_meta(comment: &str) -> std::result::Result<Option<(Point, f64)>, String> {
    let mut words = comment.split_whitespace();
    if words.next() != Some(META_TAG) {
        return Ok(None);
    }
    let bad = || format!("malformed placement comment {comment:?}");
    let rest: Vec<&str> = words.collect();
    let [o, y, s] = rest.as_slice() else {
        return Err(bad());
    };
    let x = o.strip_prefix("origin=").ok_or_else(bad)?;
    let h = s.strip_prefix("spacing=").ok_or_else(bad)?;
    let num = |t: &str| {
        t.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(bad)
    };
    let (x, y, h) = (num(x)?, num(y)?, num(h)?);
    if !(h > 0.0) {
        return Err(bad());
    }
    Ok(Some((Point::new(x, y), h)))
}

pub fn parse_pgm(data: &[u8]) -> std::result::Result<GridMask, PgmError> {
    let mut cur = Cursor {
        data,
        pos: 0,
        line: 1,
        meta: None,
    };
    let magic = cur.token()?;
    let binary = match magic {
        b"P5" => true,
        b"P2" => false,
        _ => {
            return Err(PgmError {
                line: 1,
                byte: 0,
                message: "not a PGM file (expected P2 or P5)".into(),
            })
        }
    };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(cur.error("image has no pixels"));
    }
    if !(1..=255).contains(&maxval) {
        return Err(cur.error(format!("maxval {maxval} unsupported (1..=255)")));
    }
    let inside = |v: u32| 255 * v >= THRESHOLD * maxval;

    let mut levels = Vec::with_capacity(width * height);
    if binary {
        // exactly one whitespace byte separates the header from the raster
        if cur.pos >= data.len() || !data[cur.pos].is_ascii_whitespace() {
            return Err(cur.error("missing whitespace after maxval"));
        }
        cur.bump();
        let need = width * height;
        let raster = &data[cur.pos..];
        if raster.len() < need {
            cur.pos = data.len();
            return Err(cur.error(format!(
                "raster truncated: {} of {need} bytes",
                raster.len()
            )));
        }
        for (k, &v) in raster[..need].iter().enumerate() {
            if u32::from(v) > maxval {
                cur.pos += k;
                return Err(cur.error(format!("grey level {v} exceeds maxval {maxval}")));
            }
            levels.push(u32::from(v));
        }
    } else {
        for _ in 0..width * height {
            let v = cur.number("grey level")?;
            if v > maxval {
                return Err(cur.error(format!("grey level {v} exceeds maxval {maxval}")));
            }
            levels.push(v);
        }
    }

    let (origin, spacing) = cur.meta.unwrap_or((Point::ORIGIN, 1.0));
    let mut cells = vec![false; width * height];
    for row in 0..height {
        let j = height - 1 - row;
        for i in 0..width {
            cells[j * width + i] = inside(levels[row * width + i]);
        }
    }
    GridMask::from_cells(width, height, spacing, origin, cells).map_err(|e| PgmError {
        line: cur.line,
        byte: 0,
        message: e.to_string(),
    })
}

// ---------------------------------------------------------------- polygons

#[derive(Debug, Serialize, Deserialize)]
struct PolygonFile {
    vertices: Vec<[f64; 2]>,
    closed: bool,
}

pub fn load_polygon(path: &Path) -> Result<ClosedCurve> {
    let data = read(path)?;
    parse_polygon(&data, path)
}

pub fn parse_polygon(data: &[u8], path: &Path) -> Result<ClosedCurve> {
    let file: PolygonFile = serde_json::from_slice(data).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        byte: byte_offset(data, e.line(), e.column()),
        message: e.to_string(),
    })?;
    let format = |message: String| CliError::Format {
        path: path.to_path_buf(),
        message,
    };
    if !file.closed {
        return Err(format(
            "polygon is open; only closed polygons are supported".into(),
        ));
    }
    if file.vertices.len() < 3 {
        return Err(format(format!(
            "polygon needs at least 3 vertices, got {}",
            file.vertices.len()
        )));
    }
    let pts: Vec<Point> = file
        .vertices
        .iter()
        .map(|&[x, y]| Point::new(x, y))
        .collect();
    ClosedCurve::new(pts).map_err(|e| format(e.to_string()))
}

fn byte_offset(data: &[u8], line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = data
        .split(|&b| b == b'\n')
        .take(line - 1)
        .map(|l| l.len() + 1)
        .sum();
    (start + column.saturating_sub(1)).min(data.len())
}

pub fn save_polygon(curve: &ClosedCurve, path: &Path) -> Result<()> {
    write(path, encode_polygon(curve).as_bytes())
}

pub fn encode_polygon(curve: &ClosedCurve) -> String {
    let file = PolygonFile {
        vertices: curve.vertices().iter().map(|p| [p.x, p.y]).collect(),
        closed: true,
    };
    let mut s = serde_json::to_string(&file).expect("finite coordinates serialize");
    let _ = writeln!(s);
    s
}

/// `DEFAULT_RASTER_CELLS` pixels across the bounding-box diagonal.
pub fn default_raster_spacing(curve: &ClosedCurve) -> f64 {
    curve.diameter_bound() / DEFAULT_RASTER_CELLS
}

/// Even-odd fill of `curve` sampled at pixel centres, on a grid that covers
/// the polygon with a small empty frame.
pub fn rasterize(curve: &ClosedCurve, spacing: f64) -> flatreach_core::Result<GridMask> {
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(flatreach_core::Error::Parameter(format!(
            "raster spacing must be positive, got {spacing}"
        )));
    }
    let (lo, hi) = curve.bounding_box();
    let m = RASTER_MARGIN as f64 * spacing;
    let w = ((hi.x - lo.x) / spacing).ceil() as usize + 2 * RASTER_MARGIN;
    let h = ((hi.y - lo.y) / spacing).ceil() as usize + 2 * RASTER_MARGIN;
    let origin = Point::new(lo.x - m, lo.y - m);
    GridMask::from_fn(w, h, spacing, origin, |p| curve.contains(p))
}
