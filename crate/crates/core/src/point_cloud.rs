//! Ordered point clouds in R^m with optional per-point side data.

use crate::error::{invalid, Result};

/// An ordered list of points in R^m.
///
/// A cloud may carry the true sampling density at each point (used in place
/// of a kernel estimate when present) and a per-point intrinsic dimension for
/// spaces whose local dimension varies.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    density: Option<Vec<f64>>,
    intrinsic_dims: Option<Vec<u32>>,
}

impl PointCloud {
    /// Builds a cloud from row vectors. All rows must share one length.
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().map_or(0, Vec::len);
        if points.iter().any(|p| p.len() != dim) {
            return Err(invalid("points have differing dimensions"));
        }
        let coords: Vec<f64> = points.into_iter().flatten().collect();
        Self::from_flat(dim, coords)
    }

    /// Builds a cloud from row-major coordinates.
    pub fn from_flat(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 && !coords.is_empty() {
            return Err(invalid("zero-dimensional points cannot carry coordinates"));
        }
        if dim > 0 && !coords.len().is_multiple_of(dim) {
            return Err(invalid("coordinate count is not a multiple of the dimension"));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(invalid("coordinates must be finite"));
        }
        Ok(Self {
            dim,
            coords,
            density: None,
            intrinsic_dims: None,
        })
    }

    /// Attaches the true density at each point.
    pub fn with_density(mut self, density: Vec<f64>) -> Result<Self> {
        if density.len() != self.len() {
            return Err(invalid("density must have one value per point"));
        }
        if density.iter().any(|&f| !(f > 0.0 && f.is_finite())) {
            return Err(invalid("densities must be finite and positive"));
        }
        self.density = Some(density);
        Ok(self)
    }

    /// Attaches a local intrinsic dimension to each point.
    pub fn with_intrinsic_dims(mut self, dims: Vec<u32>) -> Result<Self> {
        if dims.len() != self.len() {
            return Err(invalid("intrinsic dimensions must have one value per point"));
        }
        if dims.contains(&0) {
            return Err(invalid("intrinsic dimensions must be positive"));
        }
        self.intrinsic_dims = Some(dims);
        Ok(self)
    }

    pub fn without_density(mut self) -> Self {
        self.density = None;
        self
    }

    pub fn len(&self) -> usize {
        if self.dim == 0 {
            0
        } else {
            self.coords.len() / self.dim
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Ambient dimension m.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim.max(1))
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn density(&self) -> Option<&[f64]> {
        self.density.as_deref()
    }

    pub fn intrinsic_dims(&self) -> Option<&[u32]> {
        self.intrinsic_dims.as_deref()
    }

    /// Euclidean distance between points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        euclidean(self.point(i), self.point(j))
    }

    /// Dense row-major matrix of pairwise Euclidean distances.
    pub fn distance_matrix(&self) -> Vec<f64> {
        let n = self.len();
        let mut out = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = self.dist(i, j);
                out[i * n + j] = d;
                out[j * n + i] = d;
            }
        }
        out
    }

    /// Applies `f` to every coordinate row, keeping side data.
    pub fn map_points(&self, mut f: impl FnMut(usize, &[f64]) -> Vec<f64>) -> Result<Self> {
        let rows: Vec<Vec<f64>> = self.points().enumerate().map(|(i, p)| f(i, p)).collect();
        let mut out = Self::new(rows)?;
        out.density = self.density.clone();
        out.intrinsic_dims = self.intrinsic_dims.clone();
        Ok(out)
    }

    /// Reorders points so that point `i` of the result is point `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let coords = perm.iter().flat_map(|&i| self.point(i).iter().copied()).collect();
        Self {
            dim: self.dim,
            coords,
            density: self.density.as_ref().map(|d| perm.iter().map(|&i| d[i]).collect()),
            intrinsic_dims: self
                .intrinsic_dims
                .as_ref()
                .map(|d| perm.iter().map(|&i| d[i]).collect()),
        }
    }

    /// Concatenates two clouds of the same ambient dimension. Densities are
    /// kept only if both sides carry them.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim && !self.is_empty() && !other.is_empty() {
            return Err(invalid("cannot concatenate clouds of different dimension"));
        }
        let dim = if self.is_empty() { other.dim } else { self.dim };
        let mut coords = self.coords.clone();
        coords.extend_from_slice(&other.coords);
        let density = match (&self.density, &other.density) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        let intrinsic_dims = match (&self.intrinsic_dims, &other.intrinsic_dims) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Ok(Self {
            dim,
            coords,
            density,
            intrinsic_dims,
        })
    }
}

pub fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}
