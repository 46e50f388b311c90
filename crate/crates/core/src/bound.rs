//! The comparison construction behind the reach lower bound `Ĉ/λ`.
//!
//! All geometry lives in the normalized frame: the curve near one point of a
//! close pair is tangent to the x-axis at the origin, the opposite arc is
//! tangent to `y = −2ρ`, and both are trapped between circles of radius
//! `r = 1/λ` (the curvature bound). Cutting both tracks at `u = ±x` and
//! reconnecting them with vertical segments trades track length `≥ 4x` for
//! cut length `4y + 4ρ` plus `λ` times the area swept.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::geometry::Point;
use crate::{Error, Result};

/// Lower end of the open angle interval, inset from `3π/2`.
pub const THETA_MIN: f64 = 1.5 * PI + 1e-9;
/// Upper end of the open angle interval, inset from `2π`.
pub const THETA_MAX: f64 = 2.0 * PI - 1e-9;
/// Default golden-section interval width.
pub const DEFAULT_TOL: f64 = 1e-10;

fn check_lambda(lambda: f64) -> Result<()> {
    if lambda > 0.0 && lambda.is_finite() {
        Ok(())
    } else {
        Err(Error::parameter(format!(
            "lambda must be positive, got {lambda}"
        )))
    }
}

/// Sagitta of the radius-`1/λ` cap of half-width `x`: `1/λ − √(1/λ² − x²)`.
pub fn cap_depth(x: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let r = 1.0 / lambda;
    if !(0.0..=r).contains(&x) {
        return Err(Error::domain(format!(
            "half-width {x} outside [0, 1/lambda = {r}]"
        )));
    }
    Ok(r - (r * r - x * x).max(0.0).sqrt())
}

/// Minimal combined length of the two tracks of half-width `x`.
pub fn mass_lower_bound(x: f64) -> f64 {
    4.0 * x
}

/// Length of the two vertical cuts plus `λ` times the butterfly-wings area
/// bound: `(4y + 4ρ) + λ·(4ρx + 2xy)`.
pub fn mass_upper_bound(x: f64, y: f64, rho: f64, lambda: f64) -> f64 {
    (4.0 * y + 4.0 * rho) + lambda * (4.0 * rho * x + 2.0 * x * y)
}

/// Largest `ρ·λ` for which the cut at angle `θ` strictly lowers the energy:
/// `(2cosθ − (1 + sinθ)(cosθ + 2)) / (2(cosθ + 1))`.
pub fn c_of_theta(theta: f64) -> Result<f64> {
    if !(theta > 1.5 * PI && theta < 2.0 * PI) {
        return Err(Error::domain(format!("theta {theta} outside (3π/2, 2π)")));
    }
    Ok(c_unchecked(theta))
}

fn c_unchecked(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (2.0 * c - (1.0 + s) * (c + 2.0)) / (2.0 * (c + 1.0))
}

/// The same threshold in Cartesian form at half-width `x`:
/// `(4x − 2y(λx + 2)) / (4(λx + 1))` with `y = cap_depth(x, λ)`.
pub fn improvement_threshold(x: f64, lambda: f64) -> Result<f64> {
    let y = cap_depth(x, lambda)?;
    Ok((4.0 * x - 2.0 * y * (lambda * x + 2.0)) / (4.0 * (lambda * x + 1.0)))
}

/// Maximizer of [`c_of_theta`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizedConstant {
    pub c_hat: f64,
    pub theta_star: f64,
}

impl OptimizedConstant {
    /// Half-width of the optimal cut at scale `λ`.
    pub fn x_star(&self, lambda: f64) -> f64 {
        self.theta_star.cos() / lambda
    }
}

/// Golden-section maximization of `C(θ)` down to an interval of width `tol`,
/// after a 10⁴-point scan confirms the function is unimodal.
pub fn optimize_c(tol: f64) -> Result<OptimizedConstant> {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::parameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    check_unimodal(10_000)?;

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (THETA_MIN, THETA_MAX);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (c_unchecked(c), c_unchecked(d));
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = c_unchecked(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = c_unchecked(d);
        }
    }
    let theta_star = 0.5 * (a + b);
    Ok(OptimizedConstant {
        c_hat: c_unchecked(theta_star),
        theta_star,
    })
}

fn check_unimodal(samples: usize) -> Result<()> {
    let step = (THETA_MAX - THETA_MIN) / (samples - 1) as f64;
    let values: Vec<f64> = (0..samples)
        .map(|k| c_unchecked(THETA_MIN + k as f64 * step))
        .collect();
    let peak = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .unwrap_or(0);
    let rising = values[..=peak].windows(2).all(|w| w[1] >= w[0]);
    let falling = values[peak..].windows(2).all(|w| w[1] <= w[0]);
    if rising && falling {
        Ok(())
    } else {
        Err(Error::domain(
            "C(θ) is not unimodal on the sampled interval",
        ))
    }
}

/// `Ĉ` and `θ*` at the default tolerance, computed once.
pub fn optimal_constant() -> OptimizedConstant {
    static CELL: OnceLock<OptimizedConstant> = OnceLock::new();
    *CELL.get_or_init(|| optimize_c(DEFAULT_TOL).expect("C(θ) is unimodal"))
}

/// Parameters of one comparison construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundSpec {
    pub lambda: f64,
    pub rho: f64,
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

impl BoundSpec {
    /// `x = cosθ/λ`, `y = (1 + sinθ)/λ`.
    pub fn from_theta(lambda: f64, rho: f64, theta: f64) -> Result<Self> {
        check_lambda(lambda)?;
        check_rho(rho)?;
        if !(theta > 1.5 * PI && theta < 2.0 * PI) {
            return Err(Error::domain(format!("theta {theta} outside (3π/2, 2π)")));
        }
        Ok(Self {
            lambda,
            rho,
            x: theta.cos() / lambda,
            y: (1.0 + theta.sin()) / lambda,
            theta,
        })
    }

    /// The construction at half-width `x`, `0 < x < 1/λ`.
    pub fn from_half_width(lambda: f64, rho: f64, x: f64) -> Result<Self> {
        check_lambda(lambda)?;
        check_rho(rho)?;
        if !(x > 0.0 && x < 1.0 / lambda) {
            return Err(Error::domain(format!(
                "half-width {x} outside (0, 1/lambda)"
            )));
        }
        let y = cap_depth(x, lambda)?;
        let theta = 2.0 * PI - (x * lambda).acos();
        Ok(Self {
            lambda,
            rho,
            x,
            y,
            theta,
        })
    }

    pub fn lower(&self) -> f64 {
        mass_lower_bound(self.x)
    }

    pub fn upper(&self) -> f64 {
        mass_upper_bound(self.x, self.y, self.rho, self.lambda)
    }

    pub fn witness(&self) -> ImprovementWitness {
        let lhs = self.lower();
        let rhs = self.upper();
        ImprovementWitness {
            holds: lhs - rhs > 0.0,
            theta_used: self.theta,
            lhs,
            rhs,
            margin: lhs - rhs,
        }
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if rho >= 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::parameter(format!(
            "rho must be nonnegative, got {rho}"
        )))
    }
}

/// Both sides of the improvement inequality `4x > (4y + 4ρ) + λ(4ρx + 2xy)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementWitness {
    pub holds: bool,
    pub theta_used: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

/// Evaluates the improvement inequality at the optimal angle `θ*`.
pub fn verify_improvement(lambda: f64, rho: f64) -> Result<ImprovementWitness> {
    let opt = optimal_constant();
    Ok(BoundSpec::from_theta(lambda, rho, opt.theta_star)?.witness())
}

/// One of the two rectangles `[−x, x] × [c − r, c + r]` minus the open disks
/// of radius `r` centred at `(0, c ± r)`: a bowtie pinched at `(0, c)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CapRegion {
    pub center_y: f64,
    pub half_width: f64,
    pub radius: f64,
}

impl CapRegion {
    /// Height of the upper boundary arc above `center_y` at abscissa `u`.
    pub fn cap(&self, u: f64) -> f64 {
        let r = self.radius;
        r - (r * r - u * u).max(0.0).sqrt()
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x.abs() <= self.half_width && (p.y - self.center_y).abs() <= self.cap(p.x)
    }

    /// Upper boundary arc sampled at `n + 1` points from `−x` to `x`.
    pub fn upper_arc(&self, n: usize) -> Vec<Point> {
        self.arc(n, 1.0)
    }

    /// Lower boundary arc sampled at `n + 1` points from `−x` to `x`.
    pub fn lower_arc(&self, n: usize) -> Vec<Point> {
        self.arc(n, -1.0)
    }

    fn arc(&self, n: usize, sign: f64) -> Vec<Point> {
        let n = n.max(1);
        (0..=n)
            .map(|k| {
                let u = -self.half_width + 2.0 * self.half_width * k as f64 / n as f64;
                Point::new(u, self.center_y + sign * self.cap(u))
            })
            .collect()
    }
}

/// Geometry and masses of the comparison construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionRegions {
    pub spec: BoundSpec,
    pub r1: CapRegion,
    pub r2: CapRegion,
    /// Boundary of S*, counterclockwise: lower arc of R₂, right cut, upper
    /// arc of R₁ reversed, left cut.
    pub sstar: Vec<Point>,
    /// Exact area of S*.
    pub sstar_area: f64,
    /// The butterfly-wings bound `4ρx + 2xy`.
    pub sstar_area_bound: f64,
    /// Length of the two worst-case track arcs.
    pub track_length: f64,
    /// Length of the two vertical cuts `L(±x)`.
    pub cut_length: f64,
}

/// Samples per arc of the S* outline.
const ARC_SAMPLES: usize = 256;

pub fn build_construction(lambda: f64, rho: f64, x: f64) -> Result<ConstructionRegions> {
    let spec = BoundSpec::from_half_width(lambda, rho, x)?;
    let r = 1.0 / lambda;
    let y = spec.y;
    let r1 = CapRegion {
        center_y: 0.0,
        half_width: x,
        radius: r,
    };
    let r2 = CapRegion {
        center_y: -2.0 * rho,
        half_width: x,
        radius: r,
    };

    let mut sstar = r2.lower_arc(ARC_SAMPLES);
    let mut top = r1.upper_arc(ARC_SAMPLES);
    top.reverse();
    sstar.extend(top);

    let segment_integral = 2.0 * x * r - x * (r * r - x * x).sqrt() - r * r * (x / r).asin();
    let sstar_area = 4.0 * rho * x + 2.0 * segment_integral;
    Ok(ConstructionRegions {
        spec,
        r1,
        r2,
        sstar,
        sstar_area,
        sstar_area_bound: 4.0 * rho * x + 2.0 * x * y,
        track_length: 4.0 * r * (x / r).asin(),
        cut_length: 4.0 * rho + 4.0 * y,
    })
}

/// Whether replacing `(Γ, S)` by `(Γ*, S + S*)` lowers the flat-norm energy:
/// true iff `M(Γ) > M(Γ*) + λ·M(S*)`.
pub fn lemma4_check(
    m_gamma: f64,
    m_s: f64,
    m_gamma_star: f64,
    m_s_star: f64,
    lambda: f64,
) -> Result<bool> {
    check_lambda(lambda)?;
    for (name, m) in [
        ("m_gamma", m_gamma),
        ("m_s", m_s),
        ("m_gamma_star", m_gamma_star),
        ("m_s_star", m_s_star),
    ] {
        if !(m >= 0.0 && m.is_finite()) {
            return Err(Error::domain(format!(
                "{name} must be a nonnegative mass, got {m}"
            )));
        }
    }
    let improves = m_gamma > m_gamma_star + lambda * m_s_star;
    if improves {
        // M(S + S*) ≤ M(S) + M(S*) carries the gain to the composed pair
        assert!(m_gamma + lambda * m_s > m_gamma_star + lambda * (m_s + m_s_star));
    }
    Ok(improves)
}
