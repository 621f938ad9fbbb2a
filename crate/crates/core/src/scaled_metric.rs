//! Density-scaled k-nearest-neighbor graphs and the distances they induce.
//!
//! Edge `(i, j)` of the kNN graph is weighted by
//! `(alpha(N) * max(f_i, f_j))^(1/n) * |x_i - x_j|`, which approximates the
//! length of the segment in the density-scaled metric. Shortest weighted paths
//! then estimate geodesic distances in that metric.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::density::{estimate_density_all, unit_ball_volume, Kernel};
use crate::error::{invalid, Error, Result};
use crate::point_cloud::PointCloud;

/// Lower clamp for `log N + (n-1) log log N` so that `alpha` stays positive
/// for tiny `N` in higher dimension.
pub const ALPHA_EPS: f64 = 1e-3;

/// Scaling factor `alpha(N) = N / (log N (log N + (n-1) log log N))`, and 1 at `N = 1`.
pub fn alpha(n_points: usize, dim: u32) -> f64 {
    alpha_real(n_points, dim as f64)
}

/// `alpha` for a non-integer dimension, used when local dimensions are averaged.
pub fn alpha_real(n_points: usize, dim: f64) -> f64 {
    if n_points <= 1 {
        return 1.0;
    }
    let log_n = (n_points as f64).ln();
    let filling = (log_n + (dim - 1.0) * log_n.ln()).max(ALPHA_EPS);
    n_points as f64 / (log_n * filling)
}

/// Threshold filling factor `log N + (n-1) log log N`.
pub fn threshold_filling_factor(n_points: usize, dim: u32) -> f64 {
    let log_n = (n_points as f64).ln();
    log_n + (dim as f64 - 1.0) * log_n.ln()
}

/// Coverage-transition radius `(alpha(N) L* / (N v_n))^(1/n)` in the scaled metric.
pub fn threshold_radius(n_points: usize, dim: u32) -> Result<f64> {
    if n_points < 3 {
        return Err(invalid("threshold radius needs N >= 3"));
    }
    if dim == 0 {
        return Err(invalid("dimension must be positive"));
    }
    let lambda = threshold_filling_factor(n_points, dim);
    let r_n = alpha(n_points, dim) * lambda / (n_points as f64 * unit_ball_volume(dim));
    Ok(r_n.powf(1.0 / dim as f64))
}

/// For every point, all other indices ordered by (distance, index).
pub fn neighbor_orders(cloud: &PointCloud) -> Vec<Vec<usize>> {
    let n = cloud.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let mut order: Vec<(f64, usize)> =
                (0..n).filter(|&j| j != i).map(|j| (cloud.dist(i, j), j)).collect();
            order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            order.into_iter().map(|(_, j)| j).collect()
        })
        .collect()
}

/// Undirected kNN graph with density-scaled weights.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledGraph {
    k: usize,
    adjacency: Vec<Vec<(usize, f64)>>,
}

impl ScaledGraph {
    /// Builds a graph from an explicit undirected edge list. Duplicate edges
    /// keep the smaller weight.
    pub fn from_edges(n_vertices: usize, k: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut adjacency: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n_vertices];
        for &(i, j, w) in edges {
            if i == j || i >= n_vertices || j >= n_vertices {
                return Err(invalid(format!("bad edge ({i}, {j})")));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return Err(invalid(format!("edge ({i}, {j}) has weight {w}")));
            }
            adjacency[i].push((j, w));
            adjacency[j].push((i, w));
        }
        for list in &mut adjacency {
            list.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
            list.dedup_by_key(|e| e.0);
        }
        Ok(Self { k, adjacency })
    }

    pub fn n_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, f64)] {
        &self.adjacency[i]
    }

    /// Edges `(i, j, w)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(i, list)| {
                list.iter().filter(move |&&(j, _)| j > i).map(move |&(j, w)| (i, j, w))
            })
            .collect()
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.adjacency[i]
            .binary_search_by_key(&j, |e| e.0)
            .ok()
            .map(|pos| self.adjacency[i][pos].1)
    }
}

/// Unweighted kNN edge set: `{i, j}` with `j` among the `k` nearest of `i` or
/// vice versa. Ties in distance go to the smaller index.
pub fn knn_edge_set(cloud: &PointCloud, k: usize) -> Result<Vec<(usize, usize)>> {
    let n = cloud.len();
    if k == 0 || k >= n {
        return Err(invalid(format!("k must satisfy 1 <= k < N (k = {k}, N = {n})")));
    }
    let orders = neighbor_orders(cloud);
    let mut edges: Vec<(usize, usize)> = orders
        .iter()
        .enumerate()
        .flat_map(|(i, order)| order[..k].iter().map(move |&j| (i.min(j), i.max(j))))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}

/// Builds the weighted kNN graph using `alpha(N)` for dimension `dim`.
pub fn build_knn_graph(cloud: &PointCloud, k: usize, density: &[f64], dim: u32) -> Result<ScaledGraph> {
    build_knn_graph_with_alpha(cloud, k, density, dim, None)
}

/// As [`build_knn_graph`], optionally forcing the scaling factor.
///
/// With per-point intrinsic dimensions on the cloud, edge `(i, j)` uses the
/// mean of the two local dimensions in both the exponent and `alpha`.
pub fn build_knn_graph_with_alpha(
    cloud: &PointCloud,
    k: usize,
    density: &[f64],
    dim: u32,
    forced_alpha: Option<f64>,
) -> Result<ScaledGraph> {
    let n = cloud.len();
    if dim == 0 {
        return Err(invalid("dimension must be positive"));
    }
    if density.len() != n {
        return Err(invalid("density must have one value per point"));
    }
    if let Some(a) = forced_alpha {
        if !(a > 0.0 && a.is_finite()) {
            return Err(invalid("alpha must be positive"));
        }
    }
    let edges = knn_edge_set(cloud, k)?;
    let local_dims = cloud.intrinsic_dims();
    let mut weighted = Vec::with_capacity(edges.len());
    for (i, j) in edges {
        let d = cloud.dist(i, j);
        if d == 0.0 {
            return Err(Error::DegenerateInput(format!(
                "points {i} and {j} coincide; nearest neighbors are ambiguous"
            )));
        }
        let n_edge = match local_dims {
            Some(dims) => (dims[i] + dims[j]) as f64 / 2.0,
            None => dim as f64,
        };
        let a = forced_alpha.unwrap_or_else(|| alpha_real(n, n_edge));
        let f = density[i].max(density[j]).max(f64::MIN_POSITIVE);
        weighted.push((i, j, (a * f).powf(1.0 / n_edge) * d));
    }
    ScaledGraph::from_edges(n, k, &weighted)
}

/// Density values the scaled metric should use: the cloud's true densities
/// when it carries them, else a kernel estimate.
pub fn resolve_density(cloud: &PointCloud, kernel: &Kernel) -> Result<Vec<f64>> {
    match cloud.density() {
        Some(d) => Ok(d.to_vec()),
        None => Ok(estimate_density_all(cloud, kernel)?.values),
    }
}

/// Symmetric matrix of extended nonnegative distances with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    /// Wraps a row-major `n x n` matrix after checking the metric-space shape.
    pub fn new(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(invalid("distance matrix must be n x n"));
        }
        for i in 0..n {
            if data[i * n + i] != 0.0 {
                return Err(invalid("distance matrix diagonal must be zero"));
            }
            for j in 0..n {
                let d = data[i * n + j];
                if d.is_nan() || d < 0.0 {
                    return Err(invalid(format!("entry ({i}, {j}) is {d}")));
                }
                if d != data[j * n + i] {
                    return Err(invalid("distance matrix must be symmetric"));
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn euclidean(cloud: &PointCloud) -> Self {
        Self {
            n: cloud.len(),
            data: cloud.distance_matrix(),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Single-source shortest paths.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortestPaths {
    pub dist: Vec<f64>,
    /// Edge count of the returned path to each vertex; `None` if unreachable.
    pub hops: Vec<Option<usize>>,
}

#[derive(PartialEq)]
struct HeapEntry {
    dist: f64,
    vertex: usize,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on (dist, vertex)
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra from `source`.
pub fn shortest_paths_from(graph: &ScaledGraph, source: usize) -> ShortestPaths {
    let n = graph.n_vertices();
    let mut dist = vec![f64::INFINITY; n];
    let mut hops = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    hops[source] = Some(0);
    heap.push(HeapEntry {
        dist: 0.0,
        vertex: source,
    });
    while let Some(HeapEntry { dist: d, vertex: u }) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        let h = hops[u].map(|h| h + 1);
        for &(v, w) in graph.neighbors(u) {
            let candidate = d + w;
            if candidate < dist[v] {
                dist[v] = candidate;
                hops[v] = h;
                heap.push(HeapEntry {
                    dist: candidate,
                    vertex: v,
                });
            }
        }
    }
    ShortestPaths { dist, hops }
}

/// All-pairs shortest weighted path lengths; infinite across components.
pub fn estimated_distances(graph: &ScaledGraph) -> DistanceMatrix {
    let n = graph.n_vertices();
    let rows: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| shortest_paths_from(graph, s).dist)
        .collect();
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            // Both directions sum the same edges in opposite order; take one
            // canonical value so the matrix is exactly symmetric.
            let d = rows[i][j].min(rows[j][i]);
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
    DistanceMatrix { n, data }
}

struct UnionFind {
    parent: Vec<usize>,
    components: usize,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
            self.components -= 1;
        }
    }
}

/// Number of connected components of the unweighted kNN graph for each
/// `k = 1..=k_max`.
pub fn component_counts(cloud: &PointCloud, k_max: usize) -> Result<Vec<(usize, usize)>> {
    let n = cloud.len();
    if k_max == 0 || k_max >= n {
        return Err(invalid(format!("k_max must satisfy 1 <= k_max < N (k_max = {k_max}, N = {n})")));
    }
    let orders = neighbor_orders(cloud);
    let mut uf = UnionFind::new(n);
    let mut out = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        for (i, order) in orders.iter().enumerate() {
            uf.union(i, order[k - 1]);
        }
        out.push((k, uf.components));
    }
    Ok(out)
}

/// Picks `k` as the start of the first run of `ell + 1` equal component
/// counts, plus `ell`.
pub fn select_k_from_counts(counts: &[(usize, usize)], ell: usize) -> Option<usize> {
    if ell == 0 {
        return None;
    }
    counts
        .windows(ell + 1)
        .find(|w| w.iter().all(|&(_, c)| c == w[0].1))
        .map(|w| w[ell].0)
}

/// The k heuristic: smallest `k` whose component count equals that of every
/// `k'` in `k - ell ..= k`.
pub fn select_k(cloud: &PointCloud, ell: usize, k_max: usize) -> Result<usize> {
    if ell == 0 {
        return Err(invalid("ell must be at least 1"));
    }
    let counts = component_counts(cloud, k_max)?;
    select_k_from_counts(&counts, ell).ok_or(Error::NoPlateau { ell, k_max })
}

/// Default search bound for [`select_k`].
pub fn default_k_max(n_points: usize) -> usize {
    n_points.saturating_sub(1).min(100)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(xs: &[f64]) -> PointCloud {
        PointCloud::new(xs.iter().map(|&x| vec![x]).collect()).unwrap()
    }

    #[test]
    fn alpha_values() {
        assert_eq!(alpha(1, 1), 1.0);
        assert_eq!(alpha(1, 7), 1.0);
        assert!((alpha(100, 1) - 4.715_292_425_290_348).abs() < 1e-12);
        // ln ln 1000 = 1.93264...
        assert!((alpha(1000, 2) - 16.375_370_694_750_36).abs() < 1e-10);
        // log 2 + 2 log log 2 < 0 is clamped
        assert!(alpha(2, 3) > 0.0);
        assert!((alpha(2, 3) - 2.0 / (2f64.ln() * ALPHA_EPS)).abs() < 1e-9);
        for n in 1..6 {
            for pts in 1..200 {
                assert!(alpha(pts, n) > 0.0);
            }
        }
    }

    #[test]
    fn threshold_radius_values() {
        assert!((threshold_radius(1000, 1).unwrap() - 0.072_382_413_650_541_97).abs() < 1e-12);
        assert_eq!(threshold_filling_factor(1000, 1), 1000f64.ln());
        assert!(threshold_radius(10_000, 1).unwrap() < threshold_radius(1000, 1).unwrap());
        assert!(threshold_radius(2, 1).is_err());
    }

    #[test]
    fn two_point_unit_density() {
        let c = line(&[0.0, 2.0]);
        let g = build_knn_graph_with_alpha(&c, 1, &[1.0, 1.0], 1, Some(1.0)).unwrap();
        assert_eq!(g.edges(), vec![(0, 1, 2.0)]);
    }

    #[test]
    fn weight_uses_max_density() {
        let c = PointCloud::new(vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0]]).unwrap();
        let g = build_knn_graph_with_alpha(&c, 1, &[8.0, 1.0], 3, Some(1.0)).unwrap();
        assert!((g.weight(0, 1).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn one_way_neighbors_still_connect() {
        let c = line(&[0.0, 1.0, 3.0]);
        let edges = knn_edge_set(&c, 1).unwrap();
        assert_eq!(edges, vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn ties_break_toward_smaller_index() {
        let c = line(&[0.0, -1.0, 1.0]);
        assert_eq!(knn_edge_set(&c, 1).unwrap(), vec![(0, 1), (0, 2)]);
        assert_eq!(neighbor_orders(&c)[0], vec![1, 2]);
    }

    #[test]
    fn coincident_points_rejected() {
        let c = line(&[0.0, 0.0, 1.0]);
        assert!(matches!(
            build_knn_graph(&c, 1, &[1.0; 3], 1),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn k_must_be_below_n() {
        let c = line(&[0.0, 1.0]);
        assert!(build_knn_graph(&c, 2, &[1.0; 2], 1).is_err());
        assert!(build_knn_graph(&c, 0, &[1.0; 2], 1).is_err());
    }

    #[test]
    fn shortest_paths_examples() {
        let path = ScaledGraph::from_edges(3, 1, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        assert_eq!(estimated_distances(&path).get(0, 2), 2.0);

        let isolated = ScaledGraph::from_edges(2, 1, &[]).unwrap();
        assert_eq!(estimated_distances(&isolated).get(0, 1), f64::INFINITY);

        let tri = ScaledGraph::from_edges(3, 2, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 3.0)]).unwrap();
        let d = estimated_distances(&tri);
        assert_eq!(d.get(0, 2), 2.0);
        assert_eq!(shortest_paths_from(&tri, 0).hops[2], Some(2));
    }

    #[test]
    fn component_count_examples() {
        let c = line(&[0.0, 1.0, 3.0]);
        assert_eq!(component_counts(&c, 2).unwrap(), vec![(1, 1), (2, 1)]);
        let pairs = line(&[0.0, 0.1, 100.0, 100.1]);
        assert_eq!(component_counts(&pairs, 1).unwrap(), vec![(1, 2)]);
        assert!(component_counts(&pairs, 4).is_err());
    }

    #[test]
    fn select_k_plateau() {
        let counts: Vec<(usize, usize)> =
            [9, 6, 4, 3, 2, 2, 2, 2, 2, 2, 2, 2].iter().enumerate().map(|(i, &c)| (i + 1, c)).collect();
        assert_eq!(select_k_from_counts(&counts, 5), Some(10));
        let connected: Vec<(usize, usize)> = (1..=8).map(|k| (k, 1)).collect();
        assert_eq!(select_k_from_counts(&connected, 5), Some(6));
        assert_eq!(select_k_from_counts(&counts[..8], 5), None);
        let c = line(&[0.0, 1.0, 2.5, 4.5, 7.0, 10.0, 13.5, 17.5]);
        assert_eq!(select_k(&c, 5, 7).unwrap(), 6);
        assert!(matches!(select_k(&c, 5, 5), Err(Error::NoPlateau { .. })));
        assert!(select_k(&c, 0, 5).is_err());
    }

    #[test]
    fn distance_matrix_validation() {
        assert!(DistanceMatrix::new(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(DistanceMatrix::new(2, vec![0.0, f64::INFINITY, f64::INFINITY, 0.0]).is_ok());
    }
}
