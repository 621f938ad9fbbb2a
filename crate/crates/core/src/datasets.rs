//! Seeded sample clouds and the Lorenz system.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};
use crate::point_cloud::PointCloud;
use crate::rng::SplitMix64;

/// Two disjoint circles of radii `r1` and `r2`. A fair coin picks the circle,
/// then the angle is uniform. The first circle is centered at the origin and
/// the second at `(8, 0)`, or further right if the radii demand it. Each point
/// carries the mixture density `1 / (4 pi R)`.
pub fn sample_two_circles(rng: &mut SplitMix64, n: usize, r1: f64, r2: f64) -> Result<PointCloud> {
    if n == 0 {
        return Err(invalid("sample size must be positive"));
    }
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(invalid("radii must be positive"));
    }
    let cx = (r1 + r2 + 2.0).max(8.0);
    let mut coords = Vec::with_capacity(2 * n);
    let mut density = Vec::with_capacity(n);
    for _ in 0..n {
        let first = rng.next_f64() < 0.5;
        let theta = 2.0 * PI * rng.next_f64();
        let (r, x0) = if first { (r1, 0.0) } else { (r2, cx) };
        coords.push(x0 + r * theta.cos());
        coords.push(r * theta.sin());
        density.push(1.0 / (4.0 * PI * r));
    }
    PointCloud::from_flat(2, coords)?.with_density(density)
}

/// Radius of the Cassini oval `r^4 - 2 r^2 cos(2 theta) = e^4 - 1` at angle `theta`.
pub fn cassini_radius(theta: f64, e: f64) -> f64 {
    let c = (2.0 * theta).cos();
    (c + (c * c + e.powi(4) - 1.0).sqrt()).sqrt()
}

/// Points on a Cassini oval with uniformly drawn polar angle. Requires `e > 1`
/// so that the curve is a single loop.
pub fn sample_cassini(rng: &mut SplitMix64, n: usize, e: f64) -> Result<PointCloud> {
    if n == 0 {
        return Err(invalid("sample size must be positive"));
    }
    if !(e > 1.0) {
        return Err(invalid(format!("Cassini parameter must exceed 1 (got {e})")));
    }
    let mut coords = Vec::with_capacity(2 * n);
    for _ in 0..n {
        let theta = 2.0 * PI * rng.next_f64();
        let r = cassini_radius(theta, e);
        coords.push(r * theta.cos());
        coords.push(r * theta.sin());
    }
    PointCloud::from_flat(2, coords)
}

/// Uniform points on the unit circle followed by uniform outliers in `[-1, 1]^2`.
pub fn sample_noisy_circle(rng: &mut SplitMix64, n_circle: usize, n_outliers: usize) -> Result<PointCloud> {
    let mut coords = Vec::with_capacity(2 * (n_circle + n_outliers));
    for _ in 0..n_circle {
        let theta = 2.0 * PI * rng.next_f64();
        coords.push(theta.cos());
        coords.push(theta.sin());
    }
    for _ in 0..n_outliers {
        coords.push(rng.uniform(-1.0, 1.0));
        coords.push(rng.uniform(-1.0, 1.0));
    }
    PointCloud::from_flat(2, coords)
}

/// Density `1/6` on `[0, 1]^2` and `5/6` on `[1.5, 2.5] x [0, 1]`.
pub fn sample_two_squares(rng: &mut SplitMix64, n: usize) -> Result<PointCloud> {
    if n == 0 {
        return Err(invalid("sample size must be positive"));
    }
    let mut coords = Vec::with_capacity(2 * n);
    let mut density = Vec::with_capacity(n);
    for _ in 0..n {
        let sparse = rng.next_f64() < 1.0 / 6.0;
        let x0 = if sparse { 0.0 } else { 1.5 };
        coords.push(x0 + rng.next_f64());
        coords.push(rng.next_f64());
        density.push(if sparse { 1.0 / 6.0 } else { 5.0 / 6.0 });
    }
    PointCloud::from_flat(2, coords)?.with_density(density)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorenzParams {
    pub sigma: f64,
    pub rho: f64,
    pub beta: f64,
    pub x0: [f64; 3],
    pub t_end: f64,
    pub dt_sample: f64,
    /// RK4 steps per sample interval.
    pub substeps: usize,
}

impl Default for LorenzParams {
    fn default() -> Self {
        Self {
            sigma: 10.0,
            rho: 28.0,
            beta: 8.0 / 3.0,
            x0: [1.0, 1.0, 1.0],
            t_end: 50.0,
            dt_sample: 0.05,
            substeps: 20,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<[f64; 3]>,
}

impl Trajectory {
    /// One coordinate of every state.
    pub fn component(&self, axis: usize) -> Vec<f64> {
        self.states.iter().map(|s| s[axis]).collect()
    }
}

pub fn lorenz_field(p: &LorenzParams, s: [f64; 3]) -> [f64; 3] {
    [
        p.sigma * (s[1] - s[0]),
        s[0] * (p.rho - s[2]) - s[1],
        s[0] * s[1] - p.beta * s[2],
    ]
}

/// One classical Runge-Kutta step of size `h`.
pub fn rk4_step(p: &LorenzParams, s: [f64; 3], h: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], c: f64| [a[0] + c * b[0], a[1] + c * b[1], a[2] + c * b[2]];
    let k1 = lorenz_field(p, s);
    let k2 = lorenz_field(p, add(s, k1, h / 2.0));
    let k3 = lorenz_field(p, add(s, k2, h / 2.0));
    let k4 = lorenz_field(p, add(s, k3, h));
    let mut out = s;
    for i in 0..3 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}

/// Fixed-step integration, sampled at `i * dt_sample` for
/// `i = 0..=floor(t_end / dt_sample)`.
pub fn integrate_lorenz(p: &LorenzParams) -> Result<Trajectory> {
    if !(p.dt_sample > 0.0) || !(p.t_end >= 0.0) || p.substeps == 0 {
        return Err(invalid("Lorenz integration needs dt_sample > 0, t_end >= 0 and substeps >= 1"));
    }
    let samples = (p.t_end / p.dt_sample + 1e-9).floor() as usize;
    let h = p.dt_sample / p.substeps as f64;
    let mut s = p.x0;
    let mut times = Vec::with_capacity(samples + 1);
    let mut states = Vec::with_capacity(samples + 1);
    times.push(0.0);
    states.push(s);
    for i in 1..=samples {
        for _ in 0..p.substeps {
            s = rk4_step(p, s, h);
        }
        times.push(i as f64 * p.dt_sample);
        states.push(s);
    }
    Ok(Trajectory { times, states })
}

/// Point `i` is `(x[i], x[i + lag], ..., x[i + (dim - 1) lag])`.
pub fn delay_embedding(series: &[f64], dim: usize, lag: usize) -> Result<PointCloud> {
    if dim == 0 || lag == 0 {
        return Err(invalid("embedding dimension and lag must be positive"));
    }
    let span = (dim - 1) * lag;
    if series.len() <= span {
        return Err(invalid(format!(
            "series of length {} is too short for dimension {dim} and lag {lag}",
            series.len()
        )));
    }
    let count = series.len() - span;
    let mut coords = Vec::with_capacity(count * dim);
    for i in 0..count {
        for k in 0..dim {
            coords.push(series[i + k * lag]);
        }
    }
    PointCloud::from_flat(dim, coords)
}

/// Two-dimensional delay embedding of `x(t)` with lag one sample, from the
/// default trajectory. Yields 1000 points.
pub fn lorenz_delay_cloud() -> Result<PointCloud> {
    let traj = integrate_lorenz(&LorenzParams::default())?;
    delay_embedding(&traj.component(0), 2, 1)
}

/// Named sample clouds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dataset {
    TwoCircles,
    Cassini,
    NoisyCircle,
    TwoSquares,
    LorenzDelay,
}

impl Dataset {
    pub const ALL: [Dataset; 5] = [
        Dataset::TwoCircles,
        Dataset::Cassini,
        Dataset::NoisyCircle,
        Dataset::TwoSquares,
        Dataset::LorenzDelay,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Dataset::TwoCircles => "two-circles",
            Dataset::Cassini => "cassini",
            Dataset::NoisyCircle => "noisy-circle",
            Dataset::TwoSquares => "two-squares",
            Dataset::LorenzDelay => "lorenz-delay",
        }
    }

    pub fn default_size(self) -> usize {
        match self {
            Dataset::TwoCircles => 500,
            Dataset::Cassini | Dataset::NoisyCircle | Dataset::TwoSquares => 200,
            Dataset::LorenzDelay => 1000,
        }
    }

    /// Draws the dataset. For the noisy circle `n` counts circle points; ten
    /// outliers are always added. The Lorenz cloud is deterministic and
    /// ignores both arguments.
    pub fn generate(self, seed: u64, n: Option<usize>) -> Result<PointCloud> {
        let mut rng = SplitMix64::new(seed);
        let n = n.unwrap_or_else(|| self.default_size());
        match self {
            Dataset::TwoCircles => sample_two_circles(&mut rng, n, 1.0, 5.0),
            Dataset::Cassini => sample_cassini(&mut rng, n, 1.01),
            Dataset::NoisyCircle => sample_noisy_circle(&mut rng, n, 10),
            Dataset::TwoSquares => sample_two_squares(&mut rng, n),
            Dataset::LorenzDelay => lorenz_delay_cloud(),
        }
    }
}

impl fmt::Display for Dataset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Dataset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dataset::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| invalid(format!("unknown dataset '{s}'")))
    }
}
