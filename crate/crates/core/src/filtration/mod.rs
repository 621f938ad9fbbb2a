//! Filtered simplicial complexes built from point clouds.
//!
//! Every Vietoris-Rips style family (plain VR, DVR, density-weighted VR and
//! the KNN filtration) is a clique filtration: a simplex enters at the largest
//! value among its vertices and edges. Those families are returned as a
//! [`FlagFiltration`], which stores only vertex and edge values; the explicit
//! simplex list is produced on demand by [`FlagFiltration::to_complex`]. The
//! Euclidean Čech filtration is not a clique filtration and is built
//! explicitly.

mod cech;
mod complex;
mod flag;
pub mod miniball;

use std::fmt;
use std::str::FromStr;

pub use cech::cech_filtration_euclidean;
pub use complex::{validate_filtration, FilteredComplex, Simplex};
pub use flag::FlagFiltration;

use crate::density::{Kernel, KernelFamily};
use crate::error::{invalid, Error, Result};
use crate::point_cloud::PointCloud;
use crate::scaled_metric::{
    alpha, build_knn_graph_with_alpha, estimated_distances, neighbor_orders, resolve_density,
    DistanceMatrix, ScaledGraph,
};

/// Default cap multiplier applied to the largest finite edge value.
pub const DEFAULT_CAP_FACTOR: f64 = 1.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiltrationFamily {
    Vr,
    Dvr,
    Wvr,
    Knn,
    CechEuclidean,
}

impl FiltrationFamily {
    pub const ALL: [FiltrationFamily; 5] = [
        FiltrationFamily::Vr,
        FiltrationFamily::Dvr,
        FiltrationFamily::Wvr,
        FiltrationFamily::Knn,
        FiltrationFamily::CechEuclidean,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FiltrationFamily::Vr => "vr",
            FiltrationFamily::Dvr => "dvr",
            FiltrationFamily::Wvr => "wvr",
            FiltrationFamily::Knn => "knn",
            FiltrationFamily::CechEuclidean => "cech",
        }
    }
}

impl fmt::Display for FiltrationFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FiltrationFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "vr" => Ok(Self::Vr),
            "dvr" => Ok(Self::Dvr),
            "wvr" => Ok(Self::Wvr),
            "knn" => Ok(Self::Knn),
            "cech" | "cech_euclidean" => Ok(Self::CechEuclidean),
            other => Err(invalid(format!("unknown filtration '{other}'"))),
        }
    }
}

/// Which filtration to build, to what dimension, and where to stop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiltrationSpec {
    pub family: FiltrationFamily,
    /// Highest homology dimension of interest; simplices are built one
    /// dimension higher.
    pub max_dim: usize,
    /// Largest entry value retained; `None` applies [`DEFAULT_CAP_FACTOR`].
    pub cap: Option<f64>,
}

impl FiltrationSpec {
    pub fn validate(&self) -> Result<()> {
        if let Some(cap) = self.cap {
            if !(cap > 0.0) {
                return Err(invalid("cap must be positive"));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_cap(cap: Option<f64>) -> Result<()> {
    match cap {
        Some(c) if !(c > 0.0) => Err(invalid("cap must be positive")),
        _ => Ok(()),
    }
}

/// Vietoris-Rips filtration of a distance matrix: edge `(i, j)` enters at
/// `d(i, j) / 2`; pairs at infinite distance never connect.
pub fn vr_filtration(d: &DistanceMatrix, cap: Option<f64>) -> Result<FlagFiltration> {
    check_cap(cap)?;
    let n = d.len();
    let edges = d
        .as_slice()
        .iter()
        .map(|&x| if x.is_finite() { x / 2.0 } else { f64::INFINITY })
        .collect();
    Ok(FlagFiltration::new(n, vec![0.0; n], edges)?.with_cap(cap))
}

/// Parameters of the approximate density-scaled VR filtration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DvrParams {
    /// Intrinsic dimension of the sampled manifold.
    pub dim: u32,
    /// Neighbor count of the kNN graph.
    pub k: usize,
    pub kernel: KernelFamily,
    /// Overrides `alpha(N)` when set.
    pub alpha: Option<f64>,
}

impl DvrParams {
    pub fn new(dim: u32, k: usize, kernel: KernelFamily) -> Self {
        Self {
            dim,
            k,
            kernel,
            alpha: None,
        }
    }
}

/// Intermediate products of the DVR pipeline.
#[derive(Debug, Clone)]
pub struct DvrStages {
    pub density: Vec<f64>,
    pub graph: ScaledGraph,
    pub distances: DistanceMatrix,
    pub filtration: FlagFiltration,
}

/// Runs density estimation, the weighted kNN graph, shortest paths and VR in
/// sequence. True densities on the cloud take precedence over estimates.
pub fn dvr_stages(cloud: &PointCloud, params: &DvrParams, cap: Option<f64>) -> Result<DvrStages> {
    check_cap(cap)?;
    let kernel = Kernel::new(params.kernel, params.dim)?;
    let density = resolve_density(cloud, &kernel)?;
    let graph = build_knn_graph_with_alpha(cloud, params.k, &density, params.dim, params.alpha)?;
    let distances = estimated_distances(&graph);
    let filtration = vr_filtration(&distances, cap)?;
    Ok(DvrStages {
        density,
        graph,
        distances,
        filtration,
    })
}

/// Approximate density-scaled Vietoris-Rips filtration.
pub fn dvr_filtration(cloud: &PointCloud, params: &DvrParams, cap: Option<f64>) -> Result<FlagFiltration> {
    Ok(dvr_stages(cloud, params, cap)?.filtration)
}

/// Density-weighted VR: the ball at `x` grows with slope
/// `s_x = (alpha f(x))^(-1/n)`, so edge `(i, j)` enters at
/// `|x_i - x_j| / (s_i + s_j)`.
pub fn weighted_vr_filtration(
    cloud: &PointCloud,
    density: &[f64],
    dim: u32,
    forced_alpha: Option<f64>,
    cap: Option<f64>,
) -> Result<FlagFiltration> {
    check_cap(cap)?;
    let n = cloud.len();
    if density.len() != n {
        return Err(invalid("density must have one value per point"));
    }
    if dim == 0 {
        return Err(invalid("dimension must be positive"));
    }
    if density.iter().any(|&f| !(f > 0.0)) {
        return Err(invalid("weighted VR needs strictly positive densities"));
    }
    let a = forced_alpha.unwrap_or_else(|| alpha(n, dim));
    let slopes: Vec<f64> = density.iter().map(|&f| (a * f).powf(-1.0 / dim as f64)).collect();
    let mut edges = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let t = cloud.dist(i, j) / (slopes[i] + slopes[j]);
            edges[i * n + j] = t;
            edges[j * n + i] = t;
        }
    }
    Ok(FlagFiltration::new(n, vec![0.0; n], edges)?.with_cap(cap))
}

/// KNN filtration: edge `(i, j)` enters at the smallest `k` for which
/// `|x_i - x_j|` is within the `k`-th neighbor radius of either endpoint.
/// Vertices enter at 1. Edges beyond `k_cap` are omitted.
pub fn knn_filtration(cloud: &PointCloud, k_cap: usize) -> Result<FlagFiltration> {
    let n = cloud.len();
    if k_cap == 0 || k_cap >= n {
        return Err(invalid(format!("k_cap must satisfy 1 <= k_cap < N (k_cap = {k_cap}, N = {n})")));
    }
    let radii: Vec<Vec<f64>> = neighbor_orders(cloud)
        .iter()
        .enumerate()
        .map(|(i, order)| order.iter().map(|&j| cloud.dist(i, j)).collect())
        .collect();
    // smallest k with d <= r_i^k, i.e. one more than the count of radii below d
    let level = |i: usize, d: f64| radii[i].partition_point(|&r| r < d) + 1;
    let mut edges = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let d = cloud.dist(i, j);
            let k = level(i, d).min(level(j, d));
            let v = if k <= k_cap { k as f64 } else { f64::INFINITY };
            edges[i * n + j] = v;
            edges[j * n + i] = v;
        }
    }
    FlagFiltration::new(n, vec![1.0; n], edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::new(xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn vr_edge_at_half_distance() {
        let d = DistanceMatrix::euclidean(&line(&[0.0, 3.0]));
        let f = vr_filtration(&d, None).unwrap();
        assert_eq!(f.edge(0, 1), 1.5);
        let c = f.to_complex(1);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn vr_equilateral_triangle() {
        let s3 = 3f64.sqrt();
        let cloud = PointCloud::new(vec![vec![0.0, 0.0], vec![2.0, 0.0], vec![1.0, s3]]).unwrap();
        let c = vr_filtration(&DistanceMatrix::euclidean(&cloud), None).unwrap().to_complex(1);
        let tri = c.simplices().iter().find(|s| s.dim() == 2).unwrap();
        assert!((tri.value - 1.0).abs() < 1e-15);
    }

    #[test]
    fn vr_skips_infinite_pairs() {
        let d = DistanceMatrix::new(2, vec![0.0, f64::INFINITY, f64::INFINITY, 0.0]).unwrap();
        let c = vr_filtration(&d, None).unwrap().to_complex(1);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn dvr_unit_density_forced_alpha_is_vr() {
        let cloud = line(&[0.0, 2.0]).with_density(vec![1.0, 1.0]).unwrap();
        let mut p = DvrParams::new(1, 1, KernelFamily::Biweight);
        p.alpha = Some(1.0);
        let f = dvr_filtration(&cloud, &p, None).unwrap();
        assert_eq!(f.edge(0, 1), 1.0);
    }

    #[test]
    fn weighted_vr_examples() {
        let c = line(&[0.0, 3.0]);
        let f = weighted_vr_filtration(&c, &[1.0, 1.0], 1, Some(1.0), None).unwrap();
        assert_eq!(f.edge(0, 1), 1.5);
        let c2 = PointCloud::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let f2 = weighted_vr_filtration(&c2, &[16.0, 1.0], 2, Some(1.0), None).unwrap();
        assert!((f2.edge(0, 1) - 0.8).abs() < 1e-15);
        assert!(weighted_vr_filtration(&c2, &[0.0, 1.0], 2, None, None).is_err());
    }

    #[test]
    fn knn_examples() {
        let c = line(&[0.0, 1.0, 3.0]);
        let f = knn_filtration(&c, 2).unwrap();
        assert_eq!(f.vertex(0), 1.0);
        assert_eq!(f.edge(0, 1), 1.0);
        assert_eq!(f.edge(1, 2), 1.0);
        assert_eq!(f.edge(0, 2), 2.0);
        let capped = knn_filtration(&c, 1).unwrap();
        assert_eq!(capped.edge(0, 2), f64::INFINITY);
        assert!(knn_filtration(&c, 3).is_err());
        assert!(validate_filtration(&f.to_complex(1)));
    }

    #[test]
    fn family_names_round_trip() {
        for fam in FiltrationFamily::ALL {
            assert_eq!(fam.name().parse::<FiltrationFamily>().unwrap(), fam);
        }
        assert!("alpha".parse::<FiltrationFamily>().is_err());
    }

    #[test]
    fn caps_must_be_positive() {
        let d = DistanceMatrix::euclidean(&line(&[0.0, 3.0]));
        assert!(vr_filtration(&d, Some(0.0)).is_err());
        assert!(vr_filtration(&d, Some(-1.0)).is_err());
    }
}
