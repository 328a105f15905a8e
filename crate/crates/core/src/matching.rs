//! Minimum-cost perfect assignment (Hungarian algorithm) and spectrum
//! comparisons built on it.

use num_complex::Complex64;

/// Returns `assign` with `assign[row] = col` minimizing `Σ cost[row][assign[row]]`.
///
/// `cost` must be square; non-finite costs are treated as very large.
pub fn hungarian(cost: &[Vec<f64>]) -> Vec<usize> {
    let n = cost.len();
    if n == 0 {
        return Vec::new();
    }
    let big = cost
        .iter()
        .flatten()
        .filter(|c| c.is_finite())
        .fold(0.0f64, |m, &c| m.max(c.abs()))
        .max(1.0)
        * 1e6;
    let at = |r: usize, c: usize| {
        let v = cost[r][c];
        if v.is_finite() {
            v
        } else {
            big
        }
    };
    // Potentials-based O(n³) formulation with 1-based sentinel column 0.
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = at(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut assign = vec![0; n];
    for j in 1..=n {
        assign[p[j] - 1] = j - 1;
    }
    assign
}

/// Largest matched distance under the optimal (sum-of-distances) matching
/// of two equally sized multisets; infinite when sizes differ.
pub fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let cost: Vec<Vec<f64>> = a.iter().map(|x| b.iter().map(|y| (x - y).norm()).collect()).collect();
    hungarian(&cost)
        .iter()
        .enumerate()
        .map(|(r, &c)| cost[r][c])
        .fold(0.0, f64::max)
}

/// Same as [`multiset_distance`] for real multisets.
pub fn real_multiset_distance(a: &[f64], b: &[f64]) -> f64 {
    let ca: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    let cb: Vec<Complex64> = b.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    multiset_distance(&ca, &cb)
}
