//! Planar curve and mask primitives.

mod curvature;
mod curve;
mod distance;
mod mask;
mod offset;
mod point;
mod resample;

pub use curvature::{
    default_curvature_window, estimate_curvature, estimate_tangent, menger_curvature,
};
pub use curve::{segments_intersect, ArcLength, ClosedCurve, Orientation};
pub use distance::{signed_distance, SignedDistance};
pub use mask::GridMask;
pub use offset::{offset_curve, vertex_normals, OffsetResult, OffsetSide};
pub use point::{point_segment_distance, Point};
pub use resample::resample_arclength;
