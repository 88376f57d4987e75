//! Decentralized multi-player Bernoulli bandits with a random-winner
//! collision channel and per-turn Erdős–Rényi communication.
//!
//! A turn runs in five steps: every player picks an arm, the environment
//! draws all arm rewards and hands each pulled arm to one random puller, a
//! fresh communication graph is drawn with edge probability `alpha`, each
//! player's (arm, reward) is delivered to its neighbors, and everyone updates
//! its estimates. [`runner`] strings turns into seeded episodes and
//! aggregates them across repetitions.

pub mod comm;
pub mod config;
pub mod env;
pub mod error;
pub mod metrics;
pub mod output;
pub mod policy;
pub mod rng;
pub mod runner;

pub use comm::{disseminate, sample_graph, CommGraph, Observation};
pub use config::{AlphaSpec, ExperimentConfig, OutputFormat, MU1, MU2};
pub use env::{env_step, resolve_collisions, sample_arm_rewards, ArmSet, TurnOutcome};
pub use error::{Error, Result};
pub use metrics::{
    cumulative_regret_literal, cumulative_regret_occupancy, expected_turn_loss,
    expected_turn_reward, occupancy_indicator, optimal_per_turn_reward, total_loss, total_reward,
    GameHistory, RunMetadata, RunRecord,
};
pub use policy::{
    compute_mix_probabilities, InitOrder, MixProbabilities, PlayerEstimator, PolicyKind,
    PolicyParams, PolicyState,
};
pub use runner::{
    regret_vs_turns, run_episode, simulate_episode, sweep_alpha, AggregateRecord, Execution,
};
