//! Independent oracles and random generators shared by the integration tests.
//! Nothing here calls the crate's own linear algebra.

#![allow(dead_code)]

use diact::{IoSystem, Matrix, Vector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rows = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rows(m: &Matrix) -> Rows {
    m.to_rows()
}

pub fn identity(n: usize) -> Rows {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect()
}

/// Textbook triple loop, `i-j-k` order.
pub fn mul(a: &Rows, b: &Rows) -> Rows {
    let (n, m, p) = (a.len(), b.len(), b[0].len());
    let mut out = vec![vec![0.0; p]; n];
    for i in 0..n {
        for j in 0..p {
            let mut s = 0.0;
            for k in 0..m {
                s += a[i][k] * b[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

pub fn mul_vec(a: &Rows, v: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|r| r.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Gauss-Jordan elimination on `[M | I]` with partial pivoting.
pub fn inverse(m: &Rows) -> Rows {
    let n = m.len();
    let mut aug: Rows = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { 1.0 } else { 0.0 }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| aug[a][col].abs().total_cmp(&aug[b][col].abs()))
            .unwrap();
        assert!(aug[pivot][col].abs() > 1e-14, "oracle: singular matrix");
        aug.swap(col, pivot);
        let p = aug[col][col];
        for v in aug[col].iter_mut() {
            *v /= p;
        }
        for r in 0..n {
            if r != col {
                let factor = aug[r][col];
                if factor != 0.0 {
                    for c in 0..2 * n {
                        aug[r][c] -= factor * aug[col][c];
                    }
                }
            }
        }
    }
    aug.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// `(I − A)⁻¹` by Gauss-Jordan.
pub fn leontief(a: &Rows) -> Rows {
    let n = a.len();
    let i_minus_a: Rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1.0 } else { 0.0 } - a[i][j])
                .collect()
        })
        .collect();
    inverse(&i_minus_a)
}

pub fn max_abs_diff(a: &Rows, b: &Rows) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn max_abs_diff_vec(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Nonnegative `n×n` coefficients: each entry is nonzero with probability
/// `density`, drawn from `[min_nonzero, 1)`, then the whole matrix is scaled
/// so the largest column sum is `max_col_sum` (which bounds `ρ(A)`).
pub fn random_coefficients(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
    min_nonzero: f64,
    allow_self_loops: bool,
    max_col_sum: f64,
) -> Rows {
    let mut a = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if (i != j || allow_self_loops) && rng.random_bool(density) {
                a[i][j] = rng.random_range(min_nonzero..1.0);
            }
        }
    }
    let max_col = (0..n)
        .map(|j| (0..n).map(|i| a[i][j]).sum::<f64>())
        .fold(0.0, f64::max);
    if max_col > 0.0 {
        let s = max_col_sum / max_col;
        for v in a.iter_mut().flatten() {
            *v *= s;
        }
    }
    a
}

pub fn random_demand(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(0.1..10.0)).collect()
}

pub fn system(a: &Rows, f: &[f64]) -> IoSystem {
    IoSystem::from_coefficients(
        Matrix::from_rows(a).unwrap(),
        Vector::new(f.to_vec()).unwrap(),
        vec![],
    )
    .unwrap()
}

/// A viable random system with `n` sectors and `ρ(A) ≤ 0.9`.
pub fn random_system(rng: &mut ChaCha8Rng, n: usize) -> (Rows, Vec<f64>, IoSystem) {
    let density = rng.random_range(0.2..1.0);
    let max_col_sum = rng.random_range(0.05..0.9);
    let a = random_coefficients(rng, n, density, 0.0, true, max_col_sum);
    let f = random_demand(rng, n);
    let sys = system(&a, &f);
    (a, f, sys)
}

/// Whether some `j ≠ k` has `a_ij > 0` and reaches `k` by a walk of at least
/// one step: an intersectoral route from `i` to `k` through another sector.
pub fn indirect_route(a: &Rows, i: usize, k: usize) -> bool {
    let n = a.len();
    // sectors that reach k in one or more steps
    let mut reaches = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&j| a[j][k] > 0.0).collect();
    for &j in &stack {
        reaches[j] = true;
    }
    while let Some(v) = stack.pop() {
        for u in 0..n {
            if a[u][v] > 0.0 && !reaches[u] {
                reaches[u] = true;
                stack.push(u);
            }
        }
    }
    (0..n).any(|j| j != k && a[i][j] > 0.0 && reaches[j])
}
