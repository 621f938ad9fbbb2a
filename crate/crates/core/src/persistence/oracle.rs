//! Dense rank computations used as a reference for the reduction code.

use std::collections::HashMap;

use super::field::PrimeField;
use crate::error::{Error, Result};
use crate::filtration::FilteredComplex;

/// Largest subcomplex the oracle accepts.
pub const ORACLE_LIMIT: usize = 2000;

/// Betti number `beta_dim` of the subcomplex at level `r` over Z/pZ, computed
/// from ranks of dense boundary matrices.
pub fn betti_at(fc: &FilteredComplex, r: f64, dim: usize, p: u32) -> Result<usize> {
    let field = PrimeField::new(p)?;
    let sub: Vec<&[usize]> = fc.at_level(r).map(|s| s.vertices.as_slice()).collect();
    if sub.len() > ORACLE_LIMIT {
        return Err(Error::Oversize(sub.len()));
    }
    let of_dim = |d: usize| -> Vec<&[usize]> { sub.iter().copied().filter(|v| v.len() == d + 1).collect() };
    let cells = of_dim(dim);
    let rank_down = if dim == 0 { 0 } else { boundary_rank(&cells, &of_dim(dim - 1), field) };
    let rank_up = boundary_rank(&of_dim(dim + 1), &cells, field);
    Ok(cells.len() - rank_down - rank_up)
}

fn boundary_rank(cols: &[&[usize]], rows: &[&[usize]], field: PrimeField) -> usize {
    if cols.is_empty() || rows.is_empty() {
        return 0;
    }
    let row_of: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut m = vec![vec![0u32; cols.len()]; rows.len()];
    for (j, col) in cols.iter().enumerate() {
        for k in 0..col.len() {
            let mut face = col.to_vec();
            face.remove(k);
            let i = row_of[face.as_slice()];
            m[i][j] = field.sign(k);
        }
    }
    rank(m, field)
}

fn rank(mut m: Vec<Vec<u32>>, field: PrimeField) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, piv);
        let inv = field.inv(m[r][c]);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = field.mul(m[i][c], inv);
                for k in c..cols {
                    let sub = field.mul(f, m[r][k]);
                    m[i][k] = field.sub(m[i][k], sub);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
