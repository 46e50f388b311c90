use super::point::Point;
use crate::{Error, Result};

/// A binary region on a uniform pixel grid.
///
/// Cell `(i, j)` (column `i`, row `j`) covers the square
/// `origin + [i·h, (i+1)·h] × [j·h, (j+1)·h]`; rows grow in +y. Cells outside
/// the grid are treated as `false` everywhere in the crate.
#[derive(Debug, Clone, PartialEq)]
pub struct GridMask {
    width: usize,
    height: usize,
    spacing: f64,
    origin: Point,
    cells: Vec<bool>,
}

impl GridMask {
    /// An all-false mask.
    pub fn new(width: usize, height: usize, spacing: f64) -> Result<Self> {
        Self::from_cells(
            width,
            height,
            spacing,
            Point::ORIGIN,
            vec![false; width * height],
        )
    }

    pub fn from_cells(
        width: usize,
        height: usize,
        spacing: f64,
        origin: Point,
        cells: Vec<bool>,
    ) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::domain("grid must have positive width and height"));
        }
        if !(spacing > 0.0 && spacing.is_finite()) {
            return Err(Error::domain(format!(
                "grid spacing must be positive, got {spacing}"
            )));
        }
        if !origin.is_finite() {
            return Err(Error::domain("grid origin must be finite"));
        }
        if cells.len() != width * height {
            return Err(Error::domain(format!(
                "expected {} cells, got {}",
                width * height,
                cells.len()
            )));
        }
        Ok(Self {
            width,
            height,
            spacing,
            origin,
            cells,
        })
    }

    /// Rasterizes an indicator function sampled at cell centers.
    pub fn from_fn(
        width: usize,
        height: usize,
        spacing: f64,
        origin: Point,
        inside: impl Fn(Point) -> bool,
    ) -> Result<Self> {
        let mut mask =
            Self::from_cells(width, height, spacing, origin, vec![false; width * height])?;
        for j in 0..height {
            for i in 0..width {
                let c = mask.cell_center(i, j);
                mask.cells[j * width + i] = inside(c);
            }
        }
        Ok(mask)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    #[inline]
    pub fn origin(&self) -> Point {
        self.origin
    }

    #[inline]
    pub fn cells(&self) -> &[bool] {
        &self.cells
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.width + i
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.cells[j * self.width + i]
    }

    /// Like [`get`](Self::get) but `false` outside the grid.
    #[inline]
    pub fn get_or_false(&self, i: isize, j: isize) -> bool {
        i >= 0
            && j >= 0
            && (i as usize) < self.width
            && (j as usize) < self.height
            && self.cells[j as usize * self.width + i as usize]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        let w = self.width;
        self.cells[j * w + i] = value;
    }

    #[inline]
    pub fn cell_center(&self, i: usize, j: usize) -> Point {
        Point::new(
            self.origin.x + (i as f64 + 0.5) * self.spacing,
            self.origin.y + (j as f64 + 0.5) * self.spacing,
        )
    }

    /// Lower-left and upper-right corners of the grid.
    pub fn bounds(&self) -> (Point, Point) {
        (
            self.origin,
            Point::new(
                self.origin.x + self.width as f64 * self.spacing,
                self.origin.y + self.height as f64 * self.spacing,
            ),
        )
    }

    pub fn contains_point(&self, p: Point) -> bool {
        let (lo, hi) = self.bounds();
        p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.cells.iter().any(|&c| c)
    }

    #[inline]
    pub fn pixel_area(&self) -> f64 {
        self.spacing * self.spacing
    }

    pub fn area(&self) -> f64 {
        self.count() as f64 * self.pixel_area()
    }

    pub fn same_geometry(&self, other: &GridMask) -> bool {
        self.width == other.width
            && self.height == other.height
            && self.spacing == other.spacing
            && self.origin == other.origin
    }

    /// Number of cells where the two masks differ; errors on mismatched grids.
    pub fn symmetric_difference_count(&self, other: &GridMask) -> Result<usize> {
        if !self.same_geometry(other) {
            return Err(Error::domain("masks live on different grids"));
        }
        Ok(self
            .cells
            .iter()
            .zip(&other.cells)
            .filter(|(a, b)| a != b)
            .count())
    }

    /// Width of the all-false frame around the grid edge (in cells).
    pub fn margin(&self) -> usize {
        let mut m = 0;
        loop {
            if 2 * m >= self.width || 2 * m >= self.height {
                return m;
            }
            let ring_clear = (0..self.width)
                .all(|i| !self.get(i, m) && !self.get(i, self.height - 1 - m))
                && (0..self.height).all(|j| !self.get(m, j) && !self.get(self.width - 1 - m, j));
            if !ring_clear {
                return m;
            }
            m += 1;
        }
    }

    /// Adds `margin` false cells on every side, keeping world coordinates.
    pub fn padded(&self, margin: usize) -> GridMask {
        let w = self.width + 2 * margin;
        let h = self.height + 2 * margin;
        let mut cells = vec![false; w * h];
        for j in 0..self.height {
            let src = &self.cells[j * self.width..(j + 1) * self.width];
            let dst = (j + margin) * w + margin;
            cells[dst..dst + self.width].copy_from_slice(src);
        }
        GridMask {
            width: w,
            height: h,
            spacing: self.spacing,
            origin: Point::new(
                self.origin.x - margin as f64 * self.spacing,
                self.origin.y - margin as f64 * self.spacing,
            ),
            cells,
        }
    }

    /// Pads only as much as needed to reach a false frame of `margin` cells.
    pub fn with_margin(&self, margin: usize) -> GridMask {
        let have = self.margin();
        if have >= margin {
            self.clone()
        } else {
            self.padded(margin - have)
        }
    }

    /// A mask on the same grid with the given cells.
    pub fn with_cells(&self, cells: Vec<bool>) -> Result<GridMask> {
        GridMask::from_cells(self.width, self.height, self.spacing, self.origin, cells)
    }

    pub fn empty_like(&self) -> GridMask {
        GridMask {
            cells: vec![false; self.cells.len()],
            ..self.clone()
        }
    }
}
