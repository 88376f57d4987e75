//! Player decision rules behind one select/observe interface.
//!
//! Every policy except the uniform baseline starts by pulling each arm once,
//! in index order unless [`InitOrder::Shuffled`] is set. Incoming reports
//! during that phase still feed the estimator.

mod estimator;
mod mix;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Beta, Distribution};
use serde::{Deserialize, Serialize};

pub use estimator::PlayerEstimator;
pub use mix::{compute_mix_probabilities, MixProbabilities};

use crate::comm::Observation;
use crate::error::{Error, Result};
use crate::rng::SimRng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolicyKind {
    Ucb1,
    #[serde(rename = "egreedy")]
    EpsilonGreedy,
    Thompson,
    #[serde(rename = "asympopt")]
    AsympOpt,
    #[serde(rename = "random")]
    UniformRandom,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 5] = [
        PolicyKind::Ucb1,
        PolicyKind::EpsilonGreedy,
        PolicyKind::Thompson,
        PolicyKind::AsympOpt,
        PolicyKind::UniformRandom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::Ucb1 => "ucb1",
            PolicyKind::EpsilonGreedy => "egreedy",
            PolicyKind::Thompson => "thompson",
            PolicyKind::AsympOpt => "asympopt",
            PolicyKind::UniformRandom => "random",
        }
    }

    fn uses_epsilon(self) -> bool {
        matches!(self, PolicyKind::EpsilonGreedy | PolicyKind::AsympOpt)
    }

    fn pulls_each_arm_first(self) -> bool {
        !matches!(self, PolicyKind::UniformRandom)
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PolicyKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown algorithm {s:?} (expected ucb1, egreedy, thompson, asympopt or random)"
                ))
            })
    }
}

/// Order of the pull-each-arm-once phase.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitOrder {
    /// Arms `0..S` in order; all players collide in lockstep.
    #[default]
    Sequential,
    /// An independent random permutation per player.
    Shuffled,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct PolicyParams {
    pub epsilon0: f64,
    pub decay: f64,
    pub clamp_floor: f64,
    pub init_order: InitOrder,
}

impl Default for PolicyParams {
    fn default() -> Self {
        Self {
            epsilon0: 1.0,
            decay: 0.995,
            clamp_floor: 1e-3,
            init_order: InitOrder::Sequential,
        }
    }
}

impl PolicyParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.epsilon0) {
            return Err(Error::config(format!(
                "epsilon0 {} outside [0, 1]",
                self.epsilon0
            )));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::config(format!(
                "decay {} outside (0, 1)",
                self.decay
            )));
        }
        if !(self.clamp_floor > 0.0 && self.clamp_floor <= 1.0) {
            return Err(Error::config(format!(
                "clamp floor {} outside (0, 1]",
                self.clamp_floor
            )));
        }
        Ok(())
    }
}

/// Decision state of one player.
#[derive(Clone, Debug)]
pub struct PolicyState {
    kind: PolicyKind,
    n_players: usize,
    estimator: PlayerEstimator,
    epsilon: f64,
    decay: f64,
    clamp_floor: f64,
    init_order: Vec<usize>,
    init_cursor: usize,
    own_pulls: Vec<u64>,
}

impl PolicyState {
    /// `rng` is only consumed for [`InitOrder::Shuffled`].
    pub fn new(
        kind: PolicyKind,
        n_arms: usize,
        n_players: usize,
        params: &PolicyParams,
        rng: &mut SimRng,
    ) -> Result<Self> {
        params.validate()?;
        if n_arms == 0 {
            return Err(Error::config("policy needs at least one arm"));
        }
        if kind == PolicyKind::AsympOpt && n_players < 2 {
            return Err(Error::config("asympopt needs at least 2 players"));
        }
        let mut init_order: Vec<usize> = (0..n_arms).collect();
        if params.init_order == InitOrder::Shuffled {
            init_order.shuffle(rng);
        }
        Ok(Self {
            kind,
            n_players,
            estimator: PlayerEstimator::new(n_arms),
            epsilon: params.epsilon0,
            decay: params.decay,
            clamp_floor: params.clamp_floor,
            init_order,
            init_cursor: if kind.pulls_each_arm_first() {
                0
            } else {
                n_arms
            },
            own_pulls: vec![0; n_arms],
        })
    }

    pub fn kind(&self) -> PolicyKind {
        self.kind
    }

    pub fn estimator(&self) -> &PlayerEstimator {
        &self.estimator
    }

    pub fn estimator_mut(&mut self) -> &mut PlayerEstimator {
        &mut self.estimator
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn set_epsilon(&mut self, epsilon: f64) {
        self.epsilon = epsilon;
    }

    pub fn init_cursor(&self) -> usize {
        self.init_cursor
    }

    /// Skips the pull-each-arm-once phase.
    pub fn finish_init(&mut self) {
        self.init_cursor = self.n_arms();
    }

    pub fn set_init_cursor(&mut self, cursor: usize) {
        self.init_cursor = cursor.min(self.n_arms());
    }

    pub fn in_init(&self) -> bool {
        self.init_cursor < self.n_arms()
    }

    /// How many times this player itself chose each arm.
    pub fn own_pulls(&self) -> &[u64] {
        &self.own_pulls
    }

    pub fn n_arms(&self) -> usize {
        self.estimator.n_arms()
    }

    pub fn observe(&mut self, observations: &[Observation]) {
        self.estimator.observe(observations);
    }

    /// Picks this turn's arm according to the policy kind.
    pub fn select(&mut self, rng: &mut SimRng) -> usize {
        let arm = match self.kind {
            PolicyKind::Ucb1 => self.ucb1_select(rng),
            PolicyKind::EpsilonGreedy => self.epsilon_greedy_select(rng),
            PolicyKind::Thompson => self.thompson_select(rng),
            PolicyKind::AsympOpt => self.asymp_opt_select(rng),
            PolicyKind::UniformRandom => rng.random_range(0..self.n_arms()),
        };
        self.own_pulls[arm] += 1;
        arm
    }

    fn next_init_arm(&mut self) -> Option<usize> {
        let arm = *self.init_order.get(self.init_cursor)?;
        self.init_cursor += 1;
        Some(arm)
    }

    fn decay_epsilon(&mut self) {
        if self.kind.uses_epsilon() {
            self.epsilon *= self.decay;
        }
    }

    /// UCB1 index `mean + sqrt(2 ln n / n_i)`, with unseen arms first.
    pub fn ucb1_index(&self, arm: usize) -> f64 {
        let e = &self.estimator;
        match e.mean(arm) {
            None => f64::INFINITY,
            Some(mean) => {
                let bonus = 2.0 * (e.total() as f64).ln() / e.pulls(arm) as f64;
                mean + bonus.sqrt()
            }
        }
    }

    pub fn ucb1_select(&mut self, rng: &mut SimRng) -> usize {
        if let Some(arm) = self.next_init_arm() {
            return arm;
        }
        argmax_uniform((0..self.n_arms()).map(|i| self.ucb1_index(i)), rng)
    }

    pub fn epsilon_greedy_select(&mut self, rng: &mut SimRng) -> usize {
        let arm = match self.next_init_arm() {
            Some(arm) => arm,
            None if 1.0 - self.epsilon > rng.random::<f64>() => argmax_uniform(
                (0..self.n_arms()).map(|i| self.estimator.mean(i).unwrap_or(f64::INFINITY)),
                rng,
            ),
            None => rng.random_range(0..self.n_arms()),
        };
        self.decay_epsilon();
        arm
    }

    pub fn thompson_select(&mut self, rng: &mut SimRng) -> usize {
        if let Some(arm) = self.next_init_arm() {
            return arm;
        }
        let e = &self.estimator;
        let draws: Vec<f64> = (0..self.n_arms())
            .map(|i| {
                let a = e.successes(i) as f64 + 1.0;
                let b = e.failures(i) as f64 + 1.0;
                Beta::new(a, b)
                    .expect("shape parameters are >= 1")
                    .sample(rng)
            })
            .collect();
        argmax_uniform(draws.into_iter(), rng)
    }

    /// Observed means floored at the clamp; unseen arms count as 1.
    pub fn clamped_means(&self) -> Vec<f64> {
        (0..self.n_arms())
            .map(|i| self.estimator.mean(i).unwrap_or(1.0).max(self.clamp_floor))
            .collect()
    }

    pub fn asymp_opt_select(&mut self, rng: &mut SimRng) -> usize {
        let arm = match self.next_init_arm() {
            Some(arm) => arm,
            None if 1.0 - self.epsilon > rng.random::<f64>() => {
                let mix = compute_mix_probabilities(&self.clamped_means(), self.n_players)
                    .expect("clamped means are positive and n_players >= 2");
                mix.sample_with(rng.random::<f64>())
            }
            None => rng.random_range(0..self.n_arms()),
        };
        self.decay_epsilon();
        arm
    }
}

/// Index of a maximum, uniform over exact ties.
pub fn argmax_uniform(values: impl Iterator<Item = f64>, rng: &mut SimRng) -> usize {
    let mut best = f64::NEG_INFINITY;
    let mut best_idx = 0;
    let mut ties = 0u32;
    for (i, v) in values.enumerate() {
        if v > best {
            best = v;
            best_idx = i;
            ties = 1;
        } else if v == best {
            ties += 1;
            if rng.random_range(0..ties) == 0 {
                best_idx = i;
            }
        }
    }
    best_idx
}
