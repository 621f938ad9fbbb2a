//! Kernel density estimation with compactly supported radial kernels.
//!
//! The estimator averages `h^-n K_n(|y - x| / h)` over every sample `x`,
//! including `y` itself when it is a sample. `n` is the intrinsic dimension of
//! the sampled manifold while `|y - x|` is the ambient Euclidean distance.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::point_cloud::{euclidean, PointCloud};

/// Kernel profile, `(1 - x^2)^p` on `(-1, 1)` up to normalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum KernelFamily {
    Epanechnikov,
    #[default]
    Biweight,
    Triweight,
}

impl KernelFamily {
    pub const ALL: [KernelFamily; 3] = [
        KernelFamily::Biweight,
        KernelFamily::Epanechnikov,
        KernelFamily::Triweight,
    ];

    fn power(self) -> i32 {
        match self {
            KernelFamily::Epanechnikov => 1,
            KernelFamily::Biweight => 2,
            KernelFamily::Triweight => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            KernelFamily::Epanechnikov => "epanechnikov",
            KernelFamily::Biweight => "biweight",
            KernelFamily::Triweight => "triweight",
        }
    }
}

impl fmt::Display for KernelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KernelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "epanechnikov" => Ok(Self::Epanechnikov),
            "biweight" => Ok(Self::Biweight),
            "triweight" => Ok(Self::Triweight),
            other => Err(invalid(format!("unknown kernel '{other}'"))),
        }
    }
}

/// Volume of the unit ball in R^n.
pub fn unit_ball_volume(n: u32) -> f64 {
    // v_0 = 1, v_1 = 2, v_n = v_{n-2} * 2 pi / n
    let mut v = if n.is_multiple_of(2) { 1.0 } else { 2.0 };
    let mut k = if n.is_multiple_of(2) { 2 } else { 3 };
    while k <= n {
        v *= 2.0 * std::f64::consts::PI / k as f64;
        k += 2;
    }
    v
}

/// Surface area of the unit (n-1)-sphere, the boundary of the unit n-ball.
pub fn sphere_area(n: u32) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// A radial kernel normalized to integrate to one over R^n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    family: KernelFamily,
    dim: u32,
    scale: f64,
}

impl Kernel {
    pub fn new(family: KernelFamily, dim: u32) -> Result<Self> {
        if dim == 0 {
            return Err(invalid("kernel dimension must be at least 1"));
        }
        Ok(Self {
            family,
            dim,
            scale: 1.0 / radial_integral(family, dim),
        })
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Multiplier in front of `(1 - x^2)^p`, i.e. `K_n(0)`.
    pub fn normalizer(&self) -> f64 {
        self.scale
    }

    pub fn eval(&self, x: f64) -> f64 {
        kernel_eval(self, x)
    }
}

/// `s_{n-1} * int_0^1 (1 - r^2)^p r^(n-1) dr` in closed form.
fn radial_integral(family: KernelFamily, n: u32) -> f64 {
    let p = family.power();
    let mut sum = 0.0;
    let mut binom = 1.0;
    for j in 0..=p {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom / (n as f64 + 2.0 * j as f64);
        binom = binom * (p - j) as f64 / (j + 1) as f64;
    }
    sphere_area(n) * sum
}

/// `K_n(x)`; exactly zero for `|x| >= 1`.
pub fn kernel_eval(kernel: &Kernel, x: f64) -> f64 {
    if !(x.abs() < 1.0) {
        return 0.0;
    }
    let t = 1.0 - x * x;
    kernel.scale * t.powi(kernel.family.power())
}

/// Scott's rule bandwidth `N^(-1/(n+4))`.
pub fn scotts_bandwidth(n_points: usize, dim: u32) -> f64 {
    (n_points as f64).powf(-1.0 / (dim as f64 + 4.0))
}

/// Density estimate at `query` from all samples of `cloud`.
pub fn estimate_density(cloud: &PointCloud, kernel: &Kernel, bandwidth: f64, query: &[f64]) -> f64 {
    let n = cloud.len();
    if n == 0 {
        return 0.0;
    }
    let inv_h = 1.0 / bandwidth;
    let sum: f64 = cloud
        .points()
        .map(|x| kernel_eval(kernel, euclidean(query, x) * inv_h))
        .sum();
    sum / (n as f64 * bandwidth.powi(kernel.dim as i32))
}

/// Per-point density estimates of a cloud.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    pub values: Vec<f64>,
    pub bandwidth: f64,
    pub kernel: Kernel,
}

/// Evaluates the estimator at every sample using Scott's bandwidth.
///
/// When the cloud carries per-point intrinsic dimensions, the estimate at `y`
/// uses the kernel and bandwidth of dimension `n_y`; `bandwidth` then reports
/// the value for `kernel.dim()`.
pub fn estimate_density_all(cloud: &PointCloud, kernel: &Kernel) -> Result<DensityEstimate> {
    if cloud.is_empty() {
        return Err(invalid("cannot estimate density of an empty cloud"));
    }
    let n = cloud.len();
    let bandwidth = scotts_bandwidth(n, kernel.dim);
    let values = match cloud.intrinsic_dims() {
        None => (0..n)
            .into_par_iter()
            .map(|i| estimate_density(cloud, kernel, bandwidth, cloud.point(i)))
            .collect(),
        Some(dims) => (0..n)
            .into_par_iter()
            .map(|i| {
                let local = Kernel::new(kernel.family, dims[i]).expect("validated dims");
                let h = scotts_bandwidth(n, dims[i]);
                estimate_density(cloud, &local, h, cloud.point(i))
            })
            .collect(),
    };
    Ok(DensityEstimate {
        values,
        bandwidth,
        kernel: *kernel,
    })
}
