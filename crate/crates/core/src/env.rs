//! Bernoulli arms and the random-winner collision channel.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::SimRng;

/// True Bernoulli means of the arms. Never shown to players.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct ArmSet {
    means: Vec<f64>,
}

impl ArmSet {
    pub fn new(means: Vec<f64>) -> Result<Self> {
        if means.len() < 2 {
            return Err(Error::config(format!(
                "need at least 2 arms, got {}",
                means.len()
            )));
        }
        if let Some((i, m)) = means
            .iter()
            .enumerate()
            .find(|(_, m)| !(0.0..=1.0).contains(*m))
        {
            return Err(Error::config(format!(
                "mean of arm {i} is {m}, outside [0, 1]"
            )));
        }
        Ok(Self { means })
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn len(&self) -> usize {
        self.means.len()
    }

    pub fn is_empty(&self) -> bool {
        self.means.is_empty()
    }

    /// Checks the player count the optimal-mixing policy can handle: `2 <= n < S`.
    pub fn check_players(&self, n_players: usize) -> Result<()> {
        if n_players < 2 || n_players >= self.len() {
            return Err(Error::config(format!(
                "player count must satisfy 2 <= N < S, got N = {n_players}, S = {}",
                self.len()
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for ArmSet {
    type Error = Error;

    fn try_from(means: Vec<f64>) -> Result<Self> {
        ArmSet::new(means)
    }
}

impl From<ArmSet> for Vec<f64> {
    fn from(arms: ArmSet) -> Self {
        arms.means
    }
}

/// Everything that happened in one turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TurnOutcome {
    /// Arm chosen by each player.
    pub choices: Vec<usize>,
    /// Realization of every arm this turn, pulled or not.
    pub arm_rewards: Vec<u8>,
    /// Winning player per arm; `None` for arms nobody pulled.
    pub winners: Vec<Option<usize>>,
    /// Reward each player actually received.
    pub realized_rewards: Vec<u8>,
}

impl TurnOutcome {
    pub fn n_players(&self) -> usize {
        self.choices.len()
    }

    pub fn n_arms(&self) -> usize {
        self.arm_rewards.len()
    }
}

/// Draws one Bernoulli realization per arm.
pub fn sample_arm_rewards(arms: &ArmSet, rng: &mut SimRng) -> Vec<u8> {
    arms.means()
        .iter()
        .map(|&m| u8::from(rng.random::<f64>() < m))
        .collect()
}

/// Hands each pulled arm's realization to one uniformly chosen puller; the
/// other pullers get 0.
pub fn resolve_collisions(
    choices: &[usize],
    arm_rewards: &[u8],
    rng: &mut SimRng,
) -> Result<TurnOutcome> {
    let n_arms = arm_rewards.len();
    let mut pullers: Vec<Vec<usize>> = vec![Vec::new(); n_arms];
    for (player, &arm) in choices.iter().enumerate() {
        if arm >= n_arms {
            return Err(Error::ArmOutOfRange {
                player,
                arm,
                arms: n_arms,
            });
        }
        pullers[arm].push(player);
    }

    let mut winners = vec![None; n_arms];
    let mut realized_rewards = vec![0u8; choices.len()];
    for (arm, group) in pullers.iter().enumerate() {
        let winner = match group.len() {
            0 => continue,
            1 => group[0],
            len => group[rng.random_range(0..len)],
        };
        winners[arm] = Some(winner);
        realized_rewards[winner] = arm_rewards[arm];
    }

    Ok(TurnOutcome {
        choices: choices.to_vec(),
        arm_rewards: arm_rewards.to_vec(),
        winners,
        realized_rewards,
    })
}

/// One environment turn: arm draws from `arm_rng`, winner draws from `winner_rng`.
pub fn env_step(
    arms: &ArmSet,
    choices: &[usize],
    arm_rng: &mut SimRng,
    winner_rng: &mut SimRng,
) -> Result<TurnOutcome> {
    let arm_rewards = sample_arm_rewards(arms, arm_rng);
    resolve_collisions(choices, &arm_rewards, winner_rng)
}
