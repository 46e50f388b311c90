//! Multiscale flat norm of planar regions through the L1TV functional
//! `Per(Σ) + λ·Area(Σ Δ Ω)`, minimized exactly on the grid by a min-cut.

mod contour;
mod graph;
mod maxflow;
mod stencil;

pub use contour::{extract_boundary, smooth_closed, DEFAULT_SMOOTHING_PASSES};
pub use graph::{build_cut_graph, maxflow_mincut, Arc, CutGraph, NeighborEdge, Node};
pub use maxflow::FlowNetwork;
pub use stencil::Stencil;

use crate::geometry::GridMask;
use crate::{Error, Result};

/// Masses of a candidate decomposition `Ω = Σ + (Σ Δ Ω)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatNormValue {
    /// Length of the extracted boundary of Σ.
    pub perimeter: f64,
    pub symdiff_area: f64,
    /// `perimeter + λ·symdiff_area`.
    pub energy: f64,
}

#[derive(Debug, Clone)]
pub struct FlatNormResult {
    /// The minimizer Σ, on the same grid as the input.
    pub sigma: GridMask,
    pub perimeter: f64,
    pub symdiff_area: f64,
    pub energy: f64,
    pub lambda: f64,
    /// The minimized discrete functional (cut value) itself.
    pub cut_energy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct L1tvOptions {
    pub stencil: Stencil,
    /// Smoothing passes applied to the boundary before measuring it.
    pub smoothing_passes: usize,
}

impl Default for L1tvOptions {
    fn default() -> Self {
        Self {
            stencil: Stencil::default(),
            smoothing_passes: DEFAULT_SMOOTHING_PASSES,
        }
    }
}

/// Global minimizer of the discrete L1TV functional for `mask`, with masses
/// measured on the smoothed extracted boundary.
pub fn minimize_l1tv(mask: &GridMask, lambda: f64, stencil: Stencil) -> Result<FlatNormResult> {
    minimize_l1tv_with(
        mask,
        lambda,
        L1tvOptions {
            stencil,
            ..L1tvOptions::default()
        },
    )
}

pub fn minimize_l1tv_with(
    mask: &GridMask,
    lambda: f64,
    options: L1tvOptions,
) -> Result<FlatNormResult> {
    let graph = build_cut_graph(mask, lambda, options.stencil)?;
    let (flow, sigma) = maxflow_mincut(&graph);
    let value = flat_norm_value(mask, &sigma, lambda, options.smoothing_passes)?;
    Ok(FlatNormResult {
        sigma,
        perimeter: value.perimeter,
        symdiff_area: value.symdiff_area,
        energy: value.energy,
        lambda,
        cut_energy: flow,
    })
}

/// Flat-norm masses of the decomposition with minimizer candidate `sigma`.
pub fn flat_norm_value(
    omega: &GridMask,
    sigma: &GridMask,
    lambda: f64,
    smoothing_passes: usize,
) -> Result<FlatNormValue> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::parameter(format!(
            "lambda must be positive, got {lambda}"
        )));
    }
    let differing = omega.symmetric_difference_count(sigma)?;
    let symdiff_area = differing as f64 * omega.pixel_area();
    let perimeter = boundary_length(sigma, smoothing_passes);
    Ok(FlatNormValue {
        perimeter,
        symdiff_area,
        energy: perimeter + lambda * symdiff_area,
    })
}

/// Total length of all boundary components of `mask`.
pub fn boundary_length(mask: &GridMask, smoothing_passes: usize) -> f64 {
    extract_boundary(mask, smoothing_passes)
        .iter()
        .map(|c| c.perimeter())
        .sum()
}

/// Cut-metric energy of an arbitrary `sigma` against `omega`, the functional
/// that the min-cut minimizes exactly.
pub fn discrete_energy(
    omega: &GridMask,
    sigma: &GridMask,
    lambda: f64,
    stencil: Stencil,
) -> Result<f64> {
    if !omega.same_geometry(sigma) {
        return Err(Error::domain("masks live on different grids"));
    }
    let graph = build_cut_graph(omega, lambda, stencil)?;
    Ok(graph.cut_value(sigma.cells()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use std::f64::consts::{PI, SQRT_2};

    fn disk(radius: f64, size: usize) -> GridMask {
        let c = 0.5 * size as f64;
        GridMask::from_fn(size, size, 1.0, Point::ORIGIN, |p| {
            p.distance(Point::new(c, c)) <= radius
        })
        .unwrap()
    }

    #[test]
    fn disk_is_kept_for_large_lambda() {
        let r = 32.0;
        let omega = disk(r, 80);
        let res = minimize_l1tv(&omega, 4.0 / r, Stencil::Sixteen).unwrap();
        assert!(
            res.symdiff_area < 0.02 * omega.area(),
            "{}",
            res.symdiff_area
        );
        assert!(res.energy <= res.cut_energy * 1.05);
    }

    #[test]
    fn disk_is_deleted_for_small_lambda() {
        let r = 32.0;
        let omega = disk(r, 80);
        let res = minimize_l1tv(&omega, 1.0 / r, Stencil::Sixteen).unwrap();
        assert!(res.sigma.is_empty());
        assert_eq!(res.perimeter, 0.0);
        assert!((res.energy - omega.area() / r).abs() < 1e-9);
    }

    #[test]
    fn huge_lambda_returns_omega() {
        let omega = disk(6.3, 20);
        for stencil in [Stencil::Four, Stencil::Eight, Stencil::Sixteen] {
            let res = minimize_l1tv(&omega, 1e3, stencil).unwrap();
            assert_eq!(res.sigma, omega);
            assert_eq!(res.symdiff_area, 0.0);
        }
    }

    #[test]
    fn flat_norm_value_of_identity_and_empty() {
        let omega = disk(10.0, 30);
        let same = flat_norm_value(&omega, &omega, 0.3, 2).unwrap();
        assert_eq!(same.symdiff_area, 0.0);
        assert_eq!(same.energy, same.perimeter);

        let lambda = 0.3;
        let none = flat_norm_value(&omega, &omega.empty_like(), lambda, 2).unwrap();
        let exact = lambda * PI * 100.0;
        assert!((none.energy - exact).abs() < 0.01 * exact);
    }

    #[test]
    fn flat_norm_value_of_single_pixel_in_block() {
        let omega = GridMask::from_fn(4, 4, 1.0, Point::ORIGIN, |p| {
            (1.0..3.0).contains(&p.x) && (1.0..3.0).contains(&p.y)
        })
        .unwrap();
        let mut cells = vec![false; 16];
        cells[5] = true;
        let sigma = omega.with_cells(cells).unwrap();
        let v = flat_norm_value(&omega, &sigma, 1.0, 0).unwrap();
        assert_eq!(v.symdiff_area, 3.0);
        // the contour of one pixel is the diamond through its edge midpoints
        assert!((v.perimeter - 2.0 * SQRT_2).abs() < 1e-12);
        assert!((v.energy - (3.0 + 2.0 * SQRT_2)).abs() < 1e-12);
    }

    #[test]
    fn mismatched_grids_are_rejected() {
        let a = GridMask::new(4, 4, 1.0).unwrap();
        let b = GridMask::new(5, 4, 1.0).unwrap();
        assert!(matches!(
            flat_norm_value(&a, &b, 1.0, 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            discrete_energy(&a, &b, 1.0, Stencil::Four),
            Err(Error::Domain(_))
        ));
    }
}
