//! Explicit boundary matrix reduction with clearing.

use std::collections::HashMap;

use super::diagram::{DiagramPoint, PersistenceDiagram};
use super::field::PrimeField;
use crate::error::{Error, Result};
use crate::filtration::{validate_filtration, FilteredComplex, Simplex};

/// Canonical total order of a complex: entry value, then dimension, then
/// vertex tuple lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexOrdering {
    /// `order[k]` is the index into `fc.simplices()` of the k-th simplex.
    pub order: Vec<usize>,
}

pub fn order_simplices(fc: &FilteredComplex) -> Result<SimplexOrdering> {
    if !validate_filtration(fc) {
        return Err(Error::InvalidFiltration(
            "complex is not face-closed and monotone".into(),
        ));
    }
    let s = fc.simplices();
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&a, &b| compare(&s[a], &s[b]));
    Ok(SimplexOrdering { order })
}

fn compare(a: &Simplex, b: &Simplex) -> std::cmp::Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.dim().cmp(&b.dim()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// Sparse boundary columns over Z/pZ in filtration order. Rows index columns.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    columns: Vec<Vec<(usize, u32)>>,
    dims: Vec<usize>,
    values: Vec<f64>,
}

impl BoundaryMatrix {
    pub fn new(fc: &FilteredComplex, ordering: &SimplexOrdering, field: PrimeField) -> Self {
        let s = fc.simplices();
        let position: HashMap<&[usize], usize> = ordering
            .order
            .iter()
            .enumerate()
            .map(|(pos, &i)| (s[i].vertices.as_slice(), pos))
            .collect();
        let mut columns = Vec::with_capacity(s.len());
        let mut dims = Vec::with_capacity(s.len());
        let mut values = Vec::with_capacity(s.len());
        for &i in &ordering.order {
            let simplex = &s[i];
            let mut col: Vec<(usize, u32)> = simplex
                .facets()
                .map(|(k, face)| (position[face.as_slice()], field.sign(k)))
                .collect();
            col.sort_unstable();
            columns.push(col);
            dims.push(simplex.dim());
            values.push(simplex.value);
        }
        Self {
            columns,
            dims,
            values,
        }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, j: usize) -> &[(usize, u32)] {
        &self.columns[j]
    }

    pub fn dim(&self, j: usize) -> usize {
        self.dims[j]
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }
}

/// Result of reducing a boundary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    /// `(birth column, death column)` for every paired simplex.
    pub pairs: Vec<(usize, usize)>,
    /// Positive columns that are never killed.
    pub essential: Vec<usize>,
}

/// Left-to-right column reduction over Z/pZ, one dimension at a time from the
/// top down so that columns known to be positive are cleared.
pub fn reduce(bm: &BoundaryMatrix, p: u32) -> Result<Reduction> {
    let field = PrimeField::new(p)?;
    let n = bm.len();
    let top = bm.dims.iter().copied().max().unwrap_or(0);
    let mut reduced: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut cleared = vec![false; n];
    let mut pairs = Vec::new();

    for d in (1..=top).rev() {
        for j in (0..n).filter(|&j| bm.dims[j] == d) {
            if cleared[j] {
                continue;
            }
            let mut col = bm.columns[j].clone();
            while let Some(&(low, c)) = col.last() {
                let Some(k) = pivot_owner[low] else { break };
                let ck = reduced[k].last().unwrap().1;
                let factor = field.neg(field.mul(c, field.inv(ck)));
                col = axpy(&col, &reduced[k], factor, field);
            }
            if let Some(&(low, _)) = col.last() {
                pivot_owner[low] = Some(j);
                cleared[low] = true;
                pairs.push((low, j));
            }
            reduced[j] = col;
        }
    }
    let essential = (0..n)
        .filter(|&j| reduced[j].is_empty() && pivot_owner[j].is_none())
        .collect();
    pairs.sort_unstable();
    Ok(Reduction { pairs, essential })
}

/// `a + factor * b` on sorted sparse columns.
fn axpy(a: &[(usize, u32)], b: &[(usize, u32)], factor: u32, field: PrimeField) -> Vec<(usize, u32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, field.mul(factor, b[j].1)));
            j += 1;
        } else {
            let v = field.add(a[i].1, field.mul(factor, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Converts a reduction into a diagram for dimensions `0..=max_dim`, dropping
/// zero-persistence pairs.
pub fn extract_diagram(red: &Reduction, bm: &BoundaryMatrix, max_dim: usize, p: u32) -> PersistenceDiagram {
    let mut points = Vec::new();
    for &(b, d) in &red.pairs {
        let dim = bm.dims[b];
        if dim <= max_dim && bm.values[d] > bm.values[b] {
            points.push(DiagramPoint::new(dim, bm.values[b], bm.values[d]));
        }
    }
    for &b in &red.essential {
        if bm.dims[b] <= max_dim {
            points.push(DiagramPoint::new(bm.dims[b], bm.values[b], f64::INFINITY));
        }
    }
    PersistenceDiagram::new(p, max_dim, points)
}

/// Persistence of an explicit complex in dimensions `0..=max_dim`. The complex
/// should contain simplices up to `max_dim + 1`.
pub fn persistence_of_complex(fc: &FilteredComplex, max_dim: usize, p: u32) -> Result<PersistenceDiagram> {
    let field = PrimeField::new(p)?;
    let ordering = order_simplices(fc)?;
    let bm = BoundaryMatrix::new(fc, &ordering, field);
    let red = reduce(&bm, p)?;
    Ok(extract_diagram(&red, &bm, max_dim, p))
}
