//! Helpers shared by the integration tests and the acceptance harness.
#![allow(dead_code)]

use std::collections::HashSet;

use dvr_core::density::KernelFamily;
use dvr_core::filtration::{
    cech_filtration_euclidean, dvr_filtration, knn_filtration, vr_filtration, weighted_vr_filtration, DvrParams,
    FilteredComplex, FiltrationFamily,
};
use dvr_core::persistence::{betti_at, flag_persistence, persistence_of_complex, PersistenceDiagram};
use dvr_core::rng::SplitMix64;
use dvr_core::scaled_metric::{resolve_density, DistanceMatrix};
use dvr_core::{PointCloud, Result};

pub fn random_cloud(rng: &mut SplitMix64, n: usize, m: usize) -> PointCloud {
    let rows = (0..n).map(|_| (0..m).map(|_| rng.next_f64()).collect()).collect();
    PointCloud::new(rows).unwrap()
}

/// Explicit complex (simplices up to `max_dim + 1`) and its diagram for one
/// filtration family on a small cloud. Clique families use the implicit
/// cohomology engine for the diagram; the complex is materialized separately.
pub fn family_complex(
    cloud: &PointCloud,
    family: FiltrationFamily,
    max_dim: usize,
    p: u32,
) -> Result<(FilteredComplex, PersistenceDiagram)> {
    let n = cloud.len();
    let flag = match family {
        FiltrationFamily::Vr => vr_filtration(&DistanceMatrix::euclidean(cloud), None)?,
        FiltrationFamily::Dvr => {
            dvr_filtration(cloud, &DvrParams::new(1, 3.min(n - 1), KernelFamily::Biweight), None)?
        }
        FiltrationFamily::Wvr => {
            let kernel = dvr_core::density::Kernel::new(KernelFamily::Biweight, 1)?;
            let density = resolve_density(cloud, &kernel)?;
            weighted_vr_filtration(cloud, &density, 1, None, None)?
        }
        FiltrationFamily::Knn => knn_filtration(cloud, n - 1)?,
        FiltrationFamily::CechEuclidean => {
            let fc = cech_filtration_euclidean(cloud, max_dim, None)?;
            let d = persistence_of_complex(&fc, max_dim, p)?;
            return Ok((fc, d));
        }
    };
    let d = flag_persistence(&flag, max_dim, p)?;
    Ok((flag.to_complex(max_dim), d))
}

/// First mismatch between diagram-derived and rank-derived Betti numbers, as
/// `(r, dim, from_diagram, from_oracle)`.
pub fn betti_mismatch(
    fc: &FilteredComplex,
    d: &PersistenceDiagram,
    max_dim: usize,
    p: u32,
) -> Result<Option<(f64, usize, usize, usize)>> {
    for r in fc.entry_values() {
        for dim in 0..=max_dim {
            let oracle = betti_at(fc, r, dim, p)?;
            let derived = d.alive_count(dim, r);
            if oracle != derived {
                return Ok(Some((r, dim, derived, oracle)));
            }
        }
    }
    Ok(None)
}

pub fn simplices_at(fc: &FilteredComplex, r: f64) -> HashSet<Vec<usize>> {
    fc.at_level(r).map(|s| s.vertices.clone()).collect()
}

/// Second-longest over longest finite lifetime in `dim`; 0 with fewer than
/// two bars.
pub fn lifetime_ratio(d: &PersistenceDiagram, dim: usize) -> f64 {
    let l = d.finite_lifetimes(dim);
    if l.len() < 2 || l[0] <= 0.0 {
        return 0.0;
    }
    l[1] / l[0]
}

/// Exact bottleneck distance by enumerating every partial matching.
pub fn exhaustive_bottleneck(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, acc: f64, best: &mut f64) {
        if acc >= *best {
            return;
        }
        if i == a.len() {
            let rest = b
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(q, _)| (q.1 - q.0) / 2.0)
                .fold(acc, f64::max);
            *best = best.min(rest);
            return;
        }
        let p = a[i];
        go(i + 1, a, b, used, acc.max((p.1 - p.0) / 2.0), best);
        for j in 0..b.len() {
            if !used[j] {
                used[j] = true;
                let c = (p.0 - b[j].0).abs().max((p.1 - b[j].1).abs());
                go(i + 1, a, b, used, acc.max(c), best);
                used[j] = false;
            }
        }
    }
    let mut best = f64::INFINITY;
    go(0, a, b, &mut vec![false; b.len()], 0.0, &mut best);
    best
}
