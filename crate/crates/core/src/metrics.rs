//! Game-level reward, loss and regret.

use serde::{Deserialize, Serialize};

use crate::env::{ArmSet, TurnOutcome};
use crate::error::{Error, Result};
use crate::policy::{PolicyKind, PolicyParams};

/// Complete record of an episode, with the ground truth alongside.
#[derive(Clone, Debug)]
pub struct GameHistory {
    pub arms: ArmSet,
    pub turns: Vec<TurnOutcome>,
}

/// Which arms had at least one puller.
pub fn occupancy_indicator(choices: &[usize], n_arms: usize) -> Vec<u8> {
    let mut occupied = vec![0u8; n_arms];
    for &c in choices {
        occupied[c] = 1;
    }
    occupied
}

fn turn_reward(turn: &TurnOutcome) -> u64 {
    occupancy_indicator(&turn.choices, turn.n_arms())
        .iter()
        .zip(&turn.arm_rewards)
        .map(|(&i, &x)| u64::from(i * x))
        .sum()
}

fn turn_arm_total(turn: &TurnOutcome) -> u64 {
    turn.arm_rewards.iter().map(|&x| u64::from(x)).sum()
}

fn turn_loss(turn: &TurnOutcome) -> u64 {
    occupancy_indicator(&turn.choices, turn.n_arms())
        .iter()
        .zip(&turn.arm_rewards)
        .map(|(&i, &x)| u64::from((1 - i) * x))
        .sum()
}

/// Sum over turns of the realizations of occupied arms.
pub fn total_reward(history: &GameHistory) -> u64 {
    history.turns.iter().map(turn_reward).sum()
}

/// Sum over turns of the realizations left on unoccupied arms.
pub fn total_loss(history: &GameHistory) -> u64 {
    history.turns.iter().map(turn_loss).sum()
}

/// Sum of the `n_players` largest means: the best any collision-free
/// assignment can earn per turn.
pub fn optimal_per_turn_reward(arms: &ArmSet, n_players: usize) -> Result<f64> {
    if n_players > arms.len() {
        return Err(Error::config(format!(
            "{n_players} players exceed {} arms",
            arms.len()
        )));
    }
    let mut sorted = arms.means().to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    Ok(compensated_sum(sorted.iter().take(n_players).copied()))
}

/// Neumaier summation, so decimal inputs like `0.9 + ... + 0.5` land on 3.5.
fn compensated_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        carry += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
    }
    sum + carry
}

/// Expected reward the game collects at one turn, counting contested arms once.
pub fn occupied_mean_reward(arms: &ArmSet, choices: &[usize]) -> f64 {
    occupancy_indicator(choices, arms.len())
        .iter()
        .zip(arms.means())
        .map(|(&i, &m)| f64::from(i) * m)
        .sum()
}

/// Expected reward if every player pulled its chosen arm alone.
pub fn summed_player_means(arms: &ArmSet, choices: &[usize]) -> f64 {
    choices.iter().map(|&c| arms.means()[c]).sum()
}

fn n_players_of(history: &GameHistory) -> usize {
    history.turns.first().map_or(0, TurnOutcome::n_players)
}

/// Running regret where each player is credited with its arm's mean,
/// collided or not. Can go negative.
pub fn cumulative_regret_literal(history: &GameHistory) -> Result<Vec<f64>> {
    let best = optimal_per_turn_reward(&history.arms, n_players_of(history))?;
    Ok(running_sum(history.turns.iter().map(|t| {
        best - summed_player_means(&history.arms, &t.choices)
    })))
}

/// Running regret against occupied-arm means.
pub fn cumulative_regret_occupancy(history: &GameHistory) -> Result<Vec<f64>> {
    let best = optimal_per_turn_reward(&history.arms, n_players_of(history))?;
    Ok(running_sum(history.turns.iter().map(|t| {
        best - occupied_mean_reward(&history.arms, &t.choices)
    })))
}

fn running_sum(terms: impl Iterator<Item = f64>) -> Vec<f64> {
    terms
        .scan(0.0, |acc, x| {
            *acc += x;
            Some(*acc)
        })
        .collect()
}

/// Expected loss of a turn when every player independently pulls arm `i`
/// with probability `probs[i]`.
pub fn expected_turn_loss(probs: &[f64], arms: &ArmSet, n_players: usize) -> f64 {
    probs
        .iter()
        .zip(arms.means())
        .map(|(&c, &m)| (1.0 - c).powi(n_players as i32) * m)
        .sum()
}

/// Complement of [`expected_turn_loss`]: expected reward collected per turn.
pub fn expected_turn_reward(probs: &[f64], arms: &ArmSet, n_players: usize) -> f64 {
    arms.means().iter().sum::<f64>() - expected_turn_loss(probs, arms, n_players)
}

/// Enough to re-run the episode bit for bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub algorithm: PolicyKind,
    pub alpha: f64,
    pub seed: u64,
    pub n_players: usize,
    pub means: Vec<f64>,
    pub params: PolicyParams,
}

/// Per-turn series of one episode. Index `k` holds the value after `k + 1` turns.
#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub cumulative_reward: Vec<u64>,
    pub cumulative_loss: Vec<u64>,
    /// Running sum of every arm's realization, pulled or not.
    pub cumulative_arm_total: Vec<u64>,
    pub regret_literal: Vec<f64>,
    pub regret_occupancy: Vec<f64>,
    pub metadata: RunMetadata,
}

impl RunRecord {
    pub fn new(metadata: RunMetadata, capacity: usize) -> Self {
        Self {
            cumulative_reward: Vec::with_capacity(capacity),
            cumulative_loss: Vec::with_capacity(capacity),
            cumulative_arm_total: Vec::with_capacity(capacity),
            regret_literal: Vec::with_capacity(capacity),
            regret_occupancy: Vec::with_capacity(capacity),
            metadata,
        }
    }

    pub fn from_history(history: &GameHistory, metadata: RunMetadata) -> Result<Self> {
        let best = optimal_per_turn_reward(&history.arms, n_players_of(history))?;
        let mut record = Self::new(metadata, history.turns.len());
        for turn in &history.turns {
            record.push_turn(&history.arms, best, turn);
        }
        Ok(record)
    }

    /// Appends one turn; `best` is [`optimal_per_turn_reward`] for the game.
    pub fn push_turn(&mut self, arms: &ArmSet, best: f64, turn: &TurnOutcome) {
        fn last<T: Copy + Default>(v: &[T]) -> T {
            v.last().copied().unwrap_or_default()
        }
        self.cumulative_reward
            .push(last(&self.cumulative_reward) + turn_reward(turn));
        self.cumulative_loss
            .push(last(&self.cumulative_loss) + turn_loss(turn));
        self.cumulative_arm_total
            .push(last(&self.cumulative_arm_total) + turn_arm_total(turn));
        self.regret_literal
            .push(last(&self.regret_literal) + (best - summed_player_means(arms, &turn.choices)));
        self.regret_occupancy.push(
            last(&self.regret_occupancy) + (best - occupied_mean_reward(arms, &turn.choices)),
        );
    }

    pub fn turns(&self) -> usize {
        self.cumulative_reward.len()
    }
}
