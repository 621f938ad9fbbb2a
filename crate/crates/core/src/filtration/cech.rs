use std::collections::HashMap;

use super::complex::{FilteredComplex, Simplex};
use super::miniball::min_enclosing_ball;
use super::check_cap;
use crate::error::{invalid, Result};
use crate::point_cloud::PointCloud;

/// Euclidean Čech filtration: a simplex enters at the radius of the minimum
/// enclosing ball of its vertices. Built to dimension `max_dim + 1`.
///
/// `cap = None` keeps every simplex. Enclosing radii of higher simplices can
/// exceed every edge value, so the edge-based default used by the clique
/// families would truncate the complex here.
pub fn cech_filtration_euclidean(cloud: &PointCloud, max_dim: usize, cap: Option<f64>) -> Result<FilteredComplex> {
    check_cap(cap)?;
    let m = cloud.dim();
    if m > 3 {
        return Err(invalid(format!("Čech filtration supports ambient dimension <= 3, got {m}")));
    }
    if max_dim > m {
        return Err(invalid(format!("max_dim {max_dim} exceeds ambient dimension {m}")));
    }
    let n = cloud.len();
    let cap = cap.unwrap_or(f64::INFINITY);

    let mut values: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut simplices = Vec::new();
    for v in 0..n {
        values.insert(vec![v], 0.0);
        simplices.push(Simplex::new(vec![v], 0.0));
    }
    // grow simplices one dimension at a time from the previous layer
    let mut layer: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
    for _ in 0..=max_dim {
        let mut next = Vec::new();
        for s in &layer {
            let last = *s.last().unwrap();
            for c in (last + 1)..n {
                let mut verts = s.clone();
                verts.push(c);
                let mut face_max = 0.0f64;
                let mut closed = true;
                for skip in 0..verts.len() {
                    let face: Vec<usize> = verts.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                    match values.get(&face) {
                        Some(&fv) => face_max = face_max.max(fv),
                        None => {
                            closed = false;
                            break;
                        }
                    }
                }
                if !closed {
                    continue;
                }
                let pts: Vec<&[f64]> = verts.iter().map(|&i| cloud.point(i)).collect();
                let value = min_enclosing_ball(&pts).radius.max(face_max);
                if value > cap {
                    continue;
                }
                values.insert(verts.clone(), value);
                simplices.push(Simplex::new(verts.clone(), value));
                next.push(verts);
            }
        }
        layer = next;
    }
    Ok(FilteredComplex::new(n, max_dim, simplices))
}
