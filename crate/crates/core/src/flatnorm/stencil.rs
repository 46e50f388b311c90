use std::f64::consts::PI;

/// Neighbourhood used for the perimeter cut metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Stencil {
    /// Axis neighbours with unit weights: the cut measures ℓ¹ perimeter.
    Four,
    /// Axes and diagonals, Cauchy–Crofton weighted.
    Eight,
    /// Axes, diagonals and knight moves, Cauchy–Crofton weighted.
    #[default]
    Sixteen,
}

impl Stencil {
    pub fn from_size(n: u32) -> Option<Self> {
        match n {
            4 => Some(Stencil::Four),
            8 => Some(Stencil::Eight),
            16 => Some(Stencil::Sixteen),
            _ => None,
        }
    }

    pub fn size(self) -> u32 {
        match self {
            Stencil::Four => 4,
            Stencil::Eight => 8,
            Stencil::Sixteen => 16,
        }
    }

    /// One representative per undirected neighbour direction, angles in [0, π).
    pub fn directions(self) -> &'static [(i32, i32)] {
        const FOUR: [(i32, i32); 2] = [(1, 0), (0, 1)];
        const EIGHT: [(i32, i32); 4] = [(1, 0), (1, 1), (0, 1), (-1, 1)];
        const SIXTEEN: [(i32, i32); 8] = [
            (1, 0),
            (2, 1),
            (1, 1),
            (1, 2),
            (0, 1),
            (-1, 2),
            (-1, 1),
            (-2, 1),
        ];
        match self {
            Stencil::Four => &FOUR,
            Stencil::Eight => &EIGHT,
            Stencil::Sixteen => &SIXTEEN,
        }
    }

    /// Edge weights for unit grid spacing, parallel to [`directions`](Self::directions).
    ///
    /// For the 8- and 16-neighbourhoods the weight of direction `e` is
    /// `Δφ(e) / (2|e|)` with `Δφ` the angular cell of `e` (half the gap to
    /// each angular neighbour), scaled by one constant that balances the
    /// largest over- and under-estimate across boundary orientations.
    pub fn unit_weights(self) -> Vec<f64> {
        let dirs = self.directions();
        if self == Stencil::Four {
            return vec![1.0; dirs.len()];
        }
        let raw = crofton_weights(dirs);
        let (lo, hi) = response_range(dirs, &raw);
        let scale = 2.0 / (lo + hi);
        raw.into_iter().map(|w| w * scale).collect()
    }

    /// Cut capacity per unit boundary length for a straight boundary at
    /// angle `theta` (unit spacing); 1.0 is exact.
    pub fn response(self, theta: f64) -> f64 {
        response(self.directions(), &self.unit_weights(), theta)
    }
}

fn crofton_weights(dirs: &[(i32, i32)]) -> Vec<f64> {
    let angle = |&(x, y): &(i32, i32)| (y as f64).atan2(x as f64).rem_euclid(PI);
    let mut angles: Vec<f64> = dirs.iter().map(angle).collect();
    angles.sort_by(f64::total_cmp);
    let n = angles.len();
    dirs.iter()
        .map(|d| {
            let a = angle(d);
            let k = angles.iter().position(|&x| x == a).unwrap();
            let prev = if k == 0 {
                angles[n - 1] - PI
            } else {
                angles[k - 1]
            };
            let next = if k == n - 1 {
                angles[0] + PI
            } else {
                angles[k + 1]
            };
            let dphi = 0.5 * (next - prev);
            let len = ((d.0 * d.0 + d.1 * d.1) as f64).sqrt();
            dphi / (2.0 * len)
        })
        .collect()
}

fn response(dirs: &[(i32, i32)], weights: &[f64], theta: f64) -> f64 {
    let (c, s) = (theta.cos(), theta.sin());
    dirs.iter()
        .zip(weights)
        .map(|(&(x, y), w)| w * (x as f64 * s - y as f64 * c).abs())
        .sum()
}

fn response_range(dirs: &[(i32, i32)], weights: &[f64]) -> (f64, f64) {
    const SAMPLES: usize = 8192;
    (0..SAMPLES)
        .map(|k| response(dirs, weights, PI * k as f64 / SAMPLES as f64))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), r| {
            (lo.min(r), hi.max(r))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn max_error(st: Stencil) -> f64 {
        (0..3600)
            .map(|k| (st.response(PI * k as f64 / 3600.0) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn four_stencil_is_l1() {
        let st = Stencil::Four;
        assert_eq!(st.response(0.0), 1.0);
        let diag = st.response(PI / 4.0);
        assert!((diag - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn orientation_error_bounds() {
        assert!(
            max_error(Stencil::Eight) <= 0.045,
            "{}",
            max_error(Stencil::Eight)
        );
        assert!(
            max_error(Stencil::Sixteen) <= 0.015,
            "{}",
            max_error(Stencil::Sixteen)
        );
    }

    #[test]
    fn sizes_roundtrip() {
        for st in [Stencil::Four, Stencil::Eight, Stencil::Sixteen] {
            assert_eq!(Stencil::from_size(st.size()), Some(st));
            assert_eq!(st.directions().len() as u32, st.size() / 2);
        }
        assert_eq!(Stencil::from_size(6), None);
    }
}
