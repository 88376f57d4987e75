//! Optimal symmetric mixing strategy under full information.
//!
//! With `N` players each pulling arm `i` independently with probability
//! `c_i`, the expected per-turn loss is `sum_i (1 - c_i)^N mu_i`. Stationarity
//! forces `(1 - c_i)^(N-1) mu_i` to be equal across the support, giving
//!
//! ```text
//! c_i = 1 - B / mu_i^(1/(N-1)),   B = (|H| - 1) / sum_{k in H} (1/mu_k)^(1/(N-1))
//! ```
//!
//! Arms whose `c_i` comes out non-positive are dropped from `H` and the
//! remainder is re-solved. Each pass can only raise `B`, so a dropped arm
//! never re-enters, and the loop ends at the constrained optimum.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct MixProbabilities {
    probs: Vec<f64>,
    active: Vec<usize>,
}

impl MixProbabilities {
    /// Pull probability per arm; zero off the active set.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Arms with positive probability, ascending.
    pub fn active(&self) -> &[usize] {
        &self.active
    }

    /// Inverts the cumulative sum over the active set at `u` in `[0, 1)`.
    pub fn sample_with(&self, u: f64) -> usize {
        let mut cumulative = 0.0;
        for &i in &self.active {
            cumulative += self.probs[i];
            if cumulative >= u {
                return i;
            }
        }
        // rounding left the cumulative sum a hair below u
        *self.active.last().expect("active set is never empty")
    }
}

pub fn compute_mix_probabilities(means: &[f64], n_players: usize) -> Result<MixProbabilities> {
    if n_players < 2 {
        return Err(Error::config(format!(
            "mixing probabilities need at least 2 players, got {n_players}"
        )));
    }
    if means.is_empty() {
        return Err(Error::config("mixing probabilities need at least one arm"));
    }
    if let Some(m) = means.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
        return Err(Error::config(format!(
            "candidate means must be positive, got {m}"
        )));
    }

    let root = 1.0 / (n_players - 1) as f64;
    let inv_roots: Vec<f64> = means.iter().map(|m| (1.0 / m).powf(root)).collect();
    let mut active: Vec<usize> = (0..means.len()).collect();
    let mut probs = vec![0.0; means.len()];

    loop {
        let denom: f64 = active.iter().map(|&i| inv_roots[i]).sum();
        let scale = (active.len() - 1) as f64 / denom;
        for &i in &active {
            probs[i] = 1.0 - scale * inv_roots[i];
        }
        let before = active.len();
        active.retain(|&i| probs[i] > 0.0);
        if active.len() == before {
            break;
        }
        assert!(!active.is_empty(), "mixing discarded every arm");
    }

    let mut out = vec![0.0; means.len()];
    for &i in &active {
        out[i] = probs[i];
    }
    Ok(MixProbabilities { probs: out, active })
}
