#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Expected per-turn loss `sum_i (1 - c_i)^N mu_i`, written out here so the
/// oracle does not lean on library code.
pub fn turn_loss(c: &[f64], means: &[f64], n: usize) -> f64 {
    c.iter()
        .zip(means)
        .map(|(&ci, &m)| (1.0 - ci).powi(n as i32) * m)
        .sum()
}

fn grad(c: &[f64], means: &[f64], n: usize) -> Vec<f64> {
    c.iter()
        .zip(means)
        .map(|(&ci, &m)| -(n as f64) * (1.0 - ci).powi(n as i32 - 1) * m)
        .collect()
}

/// Minimizes the turn loss over the probability simplex by pairwise
/// coordinate descent: repeatedly move mass from the support coordinate with
/// the largest gradient to the coordinate with the smallest, with an exact
/// 1-D line search by bisection. Stops when the KKT gap closes.
pub fn minimize_turn_loss(means: &[f64], n: usize) -> Vec<f64> {
    let s = means.len();
    let mut c = vec![1.0 / s as f64; s];
    for _ in 0..200_000 {
        let g = grad(&c, means, n);
        let (lo, _) = g
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        let (hi, _) = g
            .iter()
            .enumerate()
            .filter(|(i, _)| c[*i] > 0.0)
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap();
        if g[hi] - g[lo] < 1e-15 || lo == hi {
            break;
        }
        // d/dt of the loss when t moves from `hi` to `lo`; increasing in t
        let slope = |t: f64| {
            -(n as f64) * (1.0 - c[lo] - t).powi(n as i32 - 1) * means[lo]
                + (n as f64) * (1.0 - c[hi] + t).powi(n as i32 - 1) * means[hi]
        };
        let step = if slope(c[hi]) <= 0.0 {
            c[hi]
        } else {
            let (mut a, mut b) = (0.0, c[hi]);
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if slope(m) > 0.0 {
                    b = m;
                } else {
                    a = m;
                }
            }
            0.5 * (a + b)
        };
        if step == 0.0 {
            break;
        }
        c[lo] += step;
        c[hi] -= step;
        if c[hi] < 1e-300 {
            c[hi] = 0.0;
        }
    }
    c
}

/// Uniform point on the simplex (flat Dirichlet via normalized exponentials).
pub fn random_simplex_point(rng: &mut ChaCha8Rng, s: usize) -> Vec<f64> {
    let e: Vec<f64> = (0..s).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
    let total: f64 = e.iter().sum();
    e.iter().map(|x| x / total).collect()
}

pub fn mean_se(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
