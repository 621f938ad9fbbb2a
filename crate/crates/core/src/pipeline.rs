//! One-call persistence of a point cloud under any supported filtration.

use serde_json::json;

use crate::density::{Kernel, KernelFamily};
use crate::error::{invalid, Result};
use crate::filtration::{
    cech_filtration_euclidean, dvr_filtration, knn_filtration, vr_filtration, weighted_vr_filtration, DvrParams,
    FiltrationFamily,
};
use crate::persistence::{flag_persistence, persistence_of_complex, PersistenceDiagram, DEFAULT_FIELD};
use crate::point_cloud::PointCloud;
use crate::scaled_metric::{default_k_max, resolve_density, select_k, DistanceMatrix};

/// Neighbor count, either fixed or chosen by the component-plateau heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KChoice {
    Fixed(usize),
    Auto { ell: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub family: FiltrationFamily,
    /// Intrinsic dimension of the sampled space.
    pub dim: u32,
    pub k: KChoice,
    pub kernel: KernelFamily,
    pub field: u32,
    pub max_dim: usize,
    pub cap: Option<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            family: FiltrationFamily::Dvr,
            dim: 1,
            k: KChoice::Auto { ell: 5 },
            kernel: KernelFamily::Biweight,
            field: DEFAULT_FIELD,
            max_dim: 1,
            cap: None,
        }
    }
}

/// Resolves `k` for a cloud. `Auto` searches `k <= min(N - 1, 100)`.
pub fn resolve_k(cloud: &PointCloud, k: KChoice) -> Result<usize> {
    match k {
        KChoice::Fixed(k) => Ok(k),
        KChoice::Auto { ell } => select_k(cloud, ell, default_k_max(cloud.len())),
    }
}

/// Builds the configured filtration and computes its diagram. The selected
/// `k` and the run parameters are recorded in the diagram metadata.
pub fn compute_diagram(cloud: &PointCloud, cfg: &RunConfig) -> Result<PersistenceDiagram> {
    if cloud.is_empty() {
        return Err(invalid("point cloud is empty"));
    }
    let mut meta = vec![("filtration", json!(cfg.family.name()))];
    let mut dgm = match cfg.family {
        FiltrationFamily::Vr => {
            let f = vr_filtration(&DistanceMatrix::euclidean(cloud), cfg.cap)?;
            flag_persistence(&f, cfg.max_dim, cfg.field)?
        }
        FiltrationFamily::Dvr => {
            let k = resolve_k(cloud, cfg.k)?;
            meta.push(("k", json!(k)));
            meta.push(("n", json!(cfg.dim)));
            meta.push(("kernel", json!(cfg.kernel.name())));
            meta.push(("oracle_density", json!(cloud.density().is_some())));
            let f = dvr_filtration(cloud, &DvrParams::new(cfg.dim, k, cfg.kernel), cfg.cap)?;
            flag_persistence(&f, cfg.max_dim, cfg.field)?
        }
        FiltrationFamily::Wvr => {
            let kernel = Kernel::new(cfg.kernel, cfg.dim)?;
            let density = resolve_density(cloud, &kernel)?;
            meta.push(("n", json!(cfg.dim)));
            meta.push(("kernel", json!(cfg.kernel.name())));
            let f = weighted_vr_filtration(cloud, &density, cfg.dim, None, cfg.cap)?;
            flag_persistence(&f, cfg.max_dim, cfg.field)?
        }
        FiltrationFamily::Knn => {
            // the filtration is integer valued; k only bounds the levels built
            let k_cap = match cfg.k {
                KChoice::Fixed(k) => k,
                KChoice::Auto { .. } => cloud.len().saturating_sub(1).max(1),
            };
            meta.push(("k_cap", json!(k_cap)));
            let f = knn_filtration(cloud, k_cap)?;
            flag_persistence(&f, cfg.max_dim, cfg.field)?
        }
        FiltrationFamily::CechEuclidean => {
            let fc = cech_filtration_euclidean(cloud, cfg.max_dim, cfg.cap)?;
            persistence_of_complex(&fc, cfg.max_dim, cfg.field)?
        }
    };
    dgm.metadata = meta.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Ok(dgm)
}
