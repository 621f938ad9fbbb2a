use super::complex::{FilteredComplex, Simplex};
use super::DEFAULT_CAP_FACTOR;
use crate::error::{invalid, Result};

/// A clique filtration given by vertex and edge entry values.
///
/// A simplex enters at the largest entry value among its vertices and edges.
/// Edges with infinite value, or value above the cap, are absent.
#[derive(Debug, Clone, PartialEq)]
pub struct FlagFiltration {
    n: usize,
    vertex_values: Vec<f64>,
    edge_values: Vec<f64>,
    cap: f64,
}

impl FlagFiltration {
    /// `edge_values` is a symmetric row-major `n x n` matrix; its diagonal is
    /// ignored. Edge values below an endpoint's value are raised to it.
    pub fn new(n: usize, vertex_values: Vec<f64>, mut edge_values: Vec<f64>) -> Result<Self> {
        if vertex_values.len() != n || edge_values.len() != n * n {
            return Err(invalid("flag filtration needs n vertex values and n x n edge values"));
        }
        if vertex_values.iter().any(|v| !v.is_finite()) {
            return Err(invalid("vertex values must be finite"));
        }
        for i in 0..n {
            edge_values[i * n + i] = vertex_values[i];
            for j in (i + 1)..n {
                let (a, b) = (edge_values[i * n + j], edge_values[j * n + i]);
                if a.is_nan() || a != b {
                    return Err(invalid(format!("edge values at ({i}, {j}) are not symmetric")));
                }
                let v = a.max(vertex_values[i]).max(vertex_values[j]);
                edge_values[i * n + j] = v;
                edge_values[j * n + i] = v;
            }
        }
        Ok(Self {
            n,
            vertex_values,
            edge_values,
            cap: f64::INFINITY,
        })
    }

    /// Drops every simplex entering above `cap`. `None` uses
    /// [`DEFAULT_CAP_FACTOR`] times the largest finite edge value, which keeps
    /// every finite edge.
    pub fn with_cap(mut self, cap: Option<f64>) -> Self {
        self.cap = cap.unwrap_or_else(|| self.default_cap());
        self
    }

    pub fn default_cap(&self) -> f64 {
        match self.max_finite_edge() {
            Some(m) if m > 0.0 => DEFAULT_CAP_FACTOR * m,
            Some(_) => 1.0,
            None => f64::INFINITY,
        }
    }

    pub fn cap(&self) -> f64 {
        self.cap
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn vertex(&self, i: usize) -> f64 {
        self.vertex_values[i]
    }

    pub fn vertex_values(&self) -> &[f64] {
        &self.vertex_values
    }

    /// Entry value of edge `(i, j)`, infinite when absent.
    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> f64 {
        let v = self.edge_values[i * self.n + j];
        if v <= self.cap {
            v
        } else {
            f64::INFINITY
        }
    }

    pub fn max_finite_edge(&self) -> Option<f64> {
        let mut best: Option<f64> = None;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = self.edge_values[i * self.n + j];
                if v.is_finite() {
                    best = Some(best.map_or(v, |b: f64| b.max(v)));
                }
            }
        }
        best
    }

    /// Present edges `(i, j, value)` with `i < j`.
    pub fn edges(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let v = self.edge(i, j);
                if v.is_finite() {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// Entry value of an arbitrary vertex set (ascending or not).
    pub fn simplex_value(&self, vertices: &[usize]) -> f64 {
        let mut v = vertices
            .iter()
            .map(|&i| self.vertex_values[i])
            .fold(f64::NEG_INFINITY, f64::max);
        for (a, &i) in vertices.iter().enumerate() {
            for &j in &vertices[a + 1..] {
                v = v.max(self.edge(i, j));
            }
        }
        v
    }

    /// Enumerates every clique up to dimension `max_dim + 1`.
    pub fn to_complex(&self, max_dim: usize) -> FilteredComplex {
        let top = max_dim + 1;
        let upper: Vec<Vec<usize>> = (0..self.n)
            .map(|i| ((i + 1)..self.n).filter(|&j| self.edge(i, j).is_finite()).collect())
            .collect();
        let mut simplices = Vec::new();
        for v in 0..self.n {
            let value = self.vertex_values[v];
            simplices.push(Simplex::new(vec![v], value));
            if top >= 1 {
                let mut current = vec![v];
                self.expand(&mut current, value, &upper[v], &upper, top, &mut simplices);
            }
        }
        simplices.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.vertices.cmp(&b.vertices)));
        FilteredComplex::new(self.n, max_dim, simplices)
    }

    fn expand(
        &self,
        current: &mut Vec<usize>,
        value: f64,
        candidates: &[usize],
        upper: &[Vec<usize>],
        top: usize,
        out: &mut Vec<Simplex>,
    ) {
        for (pos, &c) in candidates.iter().enumerate() {
            let mut v = value.max(self.vertex_values[c]);
            for &u in current.iter() {
                v = v.max(self.edge(u, c));
            }
            current.push(c);
            out.push(Simplex::new(current.clone(), v));
            if current.len() <= top {
                let next = intersect_sorted(&candidates[pos + 1..], &upper[c]);
                if !next.is_empty() {
                    self.expand(current, v, &next, upper, top, out);
                }
            }
            current.pop();
        }
    }
}

fn intersect_sorted(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
