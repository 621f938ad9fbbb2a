//! Bottleneck distance between diagrams and Wasserstein-infinity distance
//! between point clouds.
//!
//! Both are bottleneck matching problems: the answer is one of finitely many
//! pairwise costs, so a binary search over the sorted costs with a
//! perfect-matching test at each threshold gives the exact value.

use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::persistence::PersistenceDiagram;
use crate::point_cloud::{euclidean, PointCloud};

/// Bipartite graph with `n` vertices on each side, edges tagged by cost.
struct CostGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl CostGraph {
    /// Smallest cost threshold admitting a perfect matching.
    fn bottleneck(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let mut costs: Vec<f64> = self.edges.iter().map(|e| e.2).collect();
        costs.sort_by(f64::total_cmp);
        costs.dedup();
        let (mut lo, mut hi) = (0, costs.len() - 1);
        debug_assert!(self.has_perfect_matching(costs[hi]));
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.has_perfect_matching(costs[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        costs[lo]
    }

    fn has_perfect_matching(&self, threshold: f64) -> bool {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v, c) in &self.edges {
            if c <= threshold {
                adj[u].push(v);
            }
        }
        hopcroft_karp(&adj, self.n) == self.n
    }
}

/// Maximum matching size of a bipartite graph given left adjacency lists.
pub fn hopcroft_karp(adj: &[Vec<usize>], n_right: usize) -> usize {
    const NONE: usize = usize::MAX;
    let n_left = adj.len();
    let mut match_l = vec![NONE; n_left];
    let mut match_r = vec![NONE; n_right];
    let mut dist = vec![0usize; n_left];
    let mut size = 0;
    loop {
        // layer the graph from free left vertices
        let mut queue = VecDeque::new();
        for u in 0..n_left {
            if match_l[u] == NONE {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = match_r[v];
                if w == NONE {
                    found = true;
                } else if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !found {
            return size;
        }
        let mut it = vec![0usize; n_left];
        for u in 0..n_left {
            if match_l[u] == NONE && augment(u, adj, &mut match_l, &mut match_r, &mut dist, &mut it) {
                size += 1;
            }
        }
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    match_l: &mut [usize],
    match_r: &mut [usize],
    dist: &mut [usize],
    it: &mut [usize],
) -> bool {
    // iterative DFS along the layered graph
    let mut stack = vec![u];
    while let Some(&x) = stack.last() {
        if it[x] == adj[x].len() {
            dist[x] = usize::MAX;
            stack.pop();
            continue;
        }
        let v = adj[x][it[x]];
        it[x] += 1;
        let w = match_r[v];
        if w == usize::MAX {
            // flip the path recorded on the stack
            let mut v = v;
            while let Some(x) = stack.pop() {
                let prev = match_l[x];
                match_l[x] = v;
                match_r[v] = x;
                v = prev;
            }
            return true;
        }
        if dist[w] == dist[x] + 1 {
            stack.push(w);
        }
    }
    false
}

/// Bottleneck distance between two multisets of finite `(birth, death)` points.
pub fn bottleneck_finite(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let (na, nb) = (a.len(), b.len());
    let half = |p: &(f64, f64)| (p.1 - p.0) / 2.0;
    // left: a_0..a_{na-1}, then diagonal copies of b; right: b_0.., then diagonal copies of a
    let mut edges = Vec::with_capacity(na * nb * 2 + na + nb);
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            edges.push((i, j, (p.0 - q.0).abs().max((p.1 - q.1).abs())));
        }
        edges.push((i, nb + i, half(p)));
    }
    for (j, q) in b.iter().enumerate() {
        edges.push((na + j, j, half(q)));
        for i in 0..na {
            edges.push((na + j, nb + i, 0.0));
        }
    }
    CostGraph { n: na + nb, edges }.bottleneck()
}

/// Bottleneck distance between the dimension-`dim` parts of two diagrams.
///
/// Points with infinite death are matched among themselves by sorted birth;
/// differing counts give infinity. The search is over the exact set of
/// candidate costs, so no tolerance is involved.
pub fn bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram, dim: usize) -> f64 {
    let split = |d: &PersistenceDiagram| {
        let mut fin = Vec::new();
        let mut inf = Vec::new();
        for p in d.in_dim(dim) {
            if p.is_infinite() {
                inf.push(p.birth);
            } else if p.death > p.birth {
                fin.push((p.birth, p.death));
            }
        }
        inf.sort_by(f64::total_cmp);
        (fin, inf)
    };
    let (fa, ia) = split(a);
    let (fb, ib) = split(b);
    if ia.len() != ib.len() {
        return f64::INFINITY;
    }
    let inf_cost = ia.iter().zip(&ib).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
    bottleneck_finite(&fa, &fb).max(inf_cost)
}

/// Smallest achievable maximum displacement over bijections between two
/// equal-size clouds.
pub fn wasserstein_inf_pointcloud(x: &PointCloud, y: &PointCloud) -> Result<f64> {
    if x.len() != y.len() {
        return Err(invalid(format!("clouds differ in size ({} vs {})", x.len(), y.len())));
    }
    if x.dim() != y.dim() && !x.is_empty() {
        return Err(invalid("clouds live in different dimensions"));
    }
    let n = x.len();
    let mut edges = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            edges.push((i, j, euclidean(x.point(i), y.point(j))));
        }
    }
    Ok(CostGraph { n, edges }.bottleneck())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::persistence::DiagramPoint;

    fn dgm(points: &[(f64, f64)]) -> PersistenceDiagram {
        PersistenceDiagram::new(11, 1, points.iter().map(|&(b, d)| DiagramPoint::new(0, b, d)).collect())
    }

    #[test]
    fn examples() {
        let a = dgm(&[(0.0, 2.0)]);
        assert_eq!(bottleneck(&a, &a, 0), 0.0);
        assert_eq!(bottleneck(&a, &dgm(&[(0.0, 3.0)]), 0), 1.0);
        assert_eq!(bottleneck(&a, &dgm(&[]), 0), 1.0);
    }

    #[test]
    fn infinite_points() {
        let inf = f64::INFINITY;
        let a = dgm(&[(0.0, inf), (0.0, 1.0)]);
        let b = dgm(&[(0.5, inf)]);
        assert_eq!(bottleneck(&a, &b, 0), 0.5);
        let c = dgm(&[(0.0, inf), (0.0, inf)]);
        assert_eq!(bottleneck(&a, &c, 0), inf);
    }

    #[test]
    fn cloud_examples() {
        let p = |v: &[f64]| PointCloud::new(v.iter().map(|&x| vec![x]).collect()).unwrap();
        assert_eq!(wasserstein_inf_pointcloud(&p(&[0.0, 10.0]), &p(&[0.0, 10.0])).unwrap(), 0.0);
        assert_eq!(wasserstein_inf_pointcloud(&p(&[0.0]), &p(&[1.0])).unwrap(), 1.0);
        assert_eq!(wasserstein_inf_pointcloud(&p(&[0.0, 10.0]), &p(&[1.0, 10.0])).unwrap(), 1.0);
        assert!(wasserstein_inf_pointcloud(&p(&[0.0]), &p(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn matching_sizes() {
        let adj = vec![vec![0, 1], vec![0], vec![0]];
        assert_eq!(hopcroft_karp(&adj, 2), 2);
        let adj = vec![vec![1], vec![0, 1], vec![1, 2]];
        assert_eq!(hopcroft_karp(&adj, 3), 3);
    }
}
