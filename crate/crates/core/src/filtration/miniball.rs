//! Minimum enclosing balls of small Euclidean point sets.

use crate::point_cloud::euclidean;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl Ball {
    fn contains(&self, p: &[f64]) -> bool {
        self.radius >= 0.0 && euclidean(&self.center, p) <= self.radius * (1.0 + 1e-12) + 1e-15
    }
}

/// Smallest ball with every point of `support` on its boundary and its center
/// in their affine hull. `None` when the points are affinely dependent.
pub fn circumball(support: &[&[f64]]) -> Option<Ball> {
    let (first, rest) = support.split_first()?;
    let k = rest.len();
    let diffs: Vec<Vec<f64>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // Gram system 2 G lambda = |p_i - p_0|^2
    let mut a = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = 2.0 * dot(&diffs[i], &diffs[j]);
        }
        a[i][k] = dot(&diffs[i], &diffs[i]);
    }
    let lambda = solve(a)?;
    let mut center = first.to_vec();
    for (l, d) in lambda.iter().zip(&diffs) {
        for (c, x) in center.iter_mut().zip(d) {
            *c += l * x;
        }
    }
    let radius = support
        .iter()
        .map(|p| euclidean(&center, p))
        .fold(0.0, f64::max);
    Some(Ball { center, radius })
}

/// Gaussian elimination with partial pivoting on an augmented `k x (k+1)` system.
fn solve(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let k = a.len();
    let scale = a
        .iter()
        .flat_map(|r| r[..k].iter())
        .fold(0.0f64, |m, x| m.max(x.abs()));
    for col in 0..k {
        let piv = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))?;
        if a[piv][col].abs() <= 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        for row in (col + 1)..k {
            let f = a[row][col] / a[col][col];
            for c in col..=k {
                a[row][c] -= f * a[col][c];
            }
        }
    }
    let mut x = vec![0.0; k];
    for row in (0..k).rev() {
        let s: f64 = ((row + 1)..k).map(|c| a[row][c] * x[c]).sum();
        x[row] = (a[row][k] - s) / a[row][row];
    }
    Some(x)
}

/// Minimum enclosing ball by Welzl's recursion, processing points in order.
pub fn min_enclosing_ball(points: &[&[f64]]) -> Ball {
    assert!(!points.is_empty(), "minimum enclosing ball of an empty set");
    let dim = points[0].len();
    let mut boundary = Vec::with_capacity(dim + 1);
    welzl(points, &mut boundary, dim)
}

fn welzl<'a>(points: &[&'a [f64]], boundary: &mut Vec<&'a [f64]>, dim: usize) -> Ball {
    if points.is_empty() || boundary.len() == dim + 1 {
        return boundary_ball(boundary, dim);
    }
    let (p, rest) = points.split_last().unwrap();
    let ball = welzl(rest, boundary, dim);
    if ball.contains(p) {
        return ball;
    }
    boundary.push(p);
    let ball = welzl(rest, boundary, dim);
    boundary.pop();
    ball
}

fn boundary_ball(boundary: &[&[f64]], dim: usize) -> Ball {
    if boundary.is_empty() {
        return Ball {
            center: vec![0.0; dim],
            radius: -1.0,
        };
    }
    circumball(boundary).unwrap_or_else(|| brute_force_ball(boundary))
}

/// Enumerates every affinely independent support subset and keeps the
/// smallest circumball that contains all points. Exponential; small inputs only.
pub fn brute_force_ball(points: &[&[f64]]) -> Ball {
    let n = points.len();
    assert!(n > 0 && n < 20, "brute force ball needs 1..20 points");
    let mut best: Option<Ball> = None;
    for mask in 1u32..(1 << n) {
        let support: Vec<&[f64]> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| points[i]).collect();
        let Some(ball) = circumball(&support) else { continue };
        if points.iter().all(|p| ball.contains(p))
            && best.as_ref().is_none_or(|b| ball.radius < b.radius)
        {
            best = Some(ball);
        }
    }
    best.expect("some support subset always encloses the set")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn radius(pts: &[Vec<f64>]) -> f64 {
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        min_enclosing_ball(&refs).radius
    }

    #[test]
    fn two_points_midpoint() {
        assert!((radius(&[vec![0.0, 0.0], vec![3.0, 4.0]]) - 2.5).abs() < 1e-15);
    }

    #[test]
    fn equilateral_circumradius() {
        let s = 2.0;
        let pts = [vec![0.0, 0.0], vec![s, 0.0], vec![s / 2.0, s * 3f64.sqrt() / 2.0]];
        assert!((radius(&pts) - s / 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn obtuse_uses_longest_side() {
        let pts = [vec![0.0, 0.0], vec![4.0, 0.0], vec![2.0, 0.5]];
        assert!((radius(&pts) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn regular_tetrahedron() {
        let pts = [
            vec![1.0, 1.0, 1.0],
            vec![1.0, -1.0, -1.0],
            vec![-1.0, 1.0, -1.0],
            vec![-1.0, -1.0, 1.0],
        ];
        assert!((radius(&pts) - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn duplicates_and_collinear() {
        assert_eq!(radius(&[vec![1.0], vec![1.0]]), 0.0);
        let pts = [vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]];
        assert!((radius(&pts) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = crate::rng::SplitMix64::new(3);
        for _ in 0..200 {
            let m = 1 + (rng.next_u64() % 3) as usize;
            let n = 1 + (rng.next_u64() % 6) as usize;
            let pts: Vec<Vec<f64>> = (0..n).map(|_| (0..m).map(|_| rng.uniform(-1.0, 1.0)).collect()).collect();
            let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
            let a = min_enclosing_ball(&refs).radius;
            let b = brute_force_ball(&refs).radius;
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }
}
