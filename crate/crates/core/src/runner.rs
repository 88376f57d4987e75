//! Seeded episodes and Monte Carlo aggregation over repetitions.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comm::{disseminate, sample_graph};
use crate::config::ExperimentConfig;
use crate::env::env_step;
use crate::error::Result;
use crate::metrics::{optimal_per_turn_reward, GameHistory, RunMetadata, RunRecord};
use crate::policy::{PolicyKind, PolicyState};
use crate::rng::{episode_seed, substream, StreamRole};

/// How repetitions are scheduled. Results are identical either way.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

pub struct EpisodeOutput {
    pub record: RunRecord,
    /// Final state of every player.
    pub players: Vec<PolicyState>,
    pub history: Option<GameHistory>,
}

/// Runs one episode and returns its per-turn metrics.
pub fn run_episode(config: &ExperimentConfig, alpha: f64, seed: u64) -> Result<RunRecord> {
    Ok(simulate_episode(config, alpha, seed, false)?.record)
}

/// Runs one episode, optionally keeping every [`crate::env::TurnOutcome`].
///
/// Each turn: players select, the environment resolves draws and collisions,
/// a fresh graph is drawn, reports are delivered, players observe.
pub fn simulate_episode(
    config: &ExperimentConfig,
    alpha: f64,
    seed: u64,
    keep_history: bool,
) -> Result<EpisodeOutput> {
    let probe = ExperimentConfig {
        alpha: crate::config::AlphaSpec::Single(alpha),
        ..config.clone()
    };
    probe.validate()?;

    let arms = config.arms()?;
    let n = config.n_players;
    let best = optimal_per_turn_reward(&arms, n)?;

    let mut arm_rng = substream(seed, StreamRole::ArmRewards, 0);
    let mut winner_rng = substream(seed, StreamRole::Winners, 0);
    let mut player_rngs: Vec<_> = (0..n)
        .map(|p| substream(seed, StreamRole::Player, p as u64))
        .collect();
    let mut players = player_rngs
        .iter_mut()
        .map(|rng| PolicyState::new(config.algorithm, arms.len(), n, &config.policy, rng))
        .collect::<Result<Vec<_>>>()?;

    let metadata = RunMetadata {
        algorithm: config.algorithm,
        alpha,
        seed,
        n_players: n,
        means: config.means.clone(),
        params: config.policy,
    };
    let mut record = RunRecord::new(metadata, config.turns);
    let mut turns = keep_history.then(|| Vec::with_capacity(config.turns));

    let mut choices = vec![0usize; n];
    for k in 0..config.turns {
        for (p, player) in players.iter_mut().enumerate() {
            choices[p] = player.select(&mut player_rngs[p]);
        }
        let outcome = env_step(&arms, &choices, &mut arm_rng, &mut winner_rng)?;
        let mut graph_rng = substream(seed, StreamRole::Graph, k as u64);
        let graph = sample_graph(n, alpha, &mut graph_rng)?;
        for (player, inbox) in players.iter_mut().zip(disseminate(&outcome, &graph)) {
            player.observe(&inbox);
        }
        record.push_turn(&arms, best, &outcome);
        if let Some(turns) = turns.as_mut() {
            turns.push(outcome);
        }
    }

    Ok(EpisodeOutput {
        record,
        players,
        history: turns.map(|turns| GameHistory { arms, turns }),
    })
}

/// Mean and spread over repetitions at one (algorithm, alpha, turn) point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AggregateRecord {
    pub algorithm: PolicyKind,
    pub alpha: f64,
    pub turn: usize,
    pub repetitions: usize,
    pub regret_occupancy_mean: f64,
    pub regret_occupancy_std: f64,
    pub regret_literal_mean: f64,
    pub regret_literal_std: f64,
    pub reward_mean: f64,
    pub loss_mean: f64,
    pub seed_base: u64,
}

#[derive(Clone, Copy, Debug)]
struct Snapshot {
    regret_occupancy: f64,
    regret_literal: f64,
    reward: f64,
    loss: f64,
}

impl Snapshot {
    fn at(record: &RunRecord, turn: usize) -> Self {
        let k = turn - 1;
        Self {
            regret_occupancy: record.regret_occupancy[k],
            regret_literal: record.regret_literal[k],
            reward: record.cumulative_reward[k] as f64,
            loss: record.cumulative_loss[k] as f64,
        }
    }
}

/// Sample mean and standard deviation (`n - 1` denominator, 0 for one sample).
pub fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Runs every (alpha, repetition) episode and keeps snapshots at `turns`.
/// Output is indexed `[alpha][repetition][checkpoint]`.
fn run_grid(
    config: &ExperimentConfig,
    turns: &[usize],
    execution: Execution,
) -> Result<Vec<Vec<Vec<Snapshot>>>> {
    config.validate()?;
    let alphas = config.alphas();
    let jobs: Vec<(usize, usize)> = (0..alphas.len())
        .flat_map(|a| (0..config.repetitions).map(move |r| (a, r)))
        .collect();
    let job = |&(a, r): &(usize, usize)| -> Result<Vec<Snapshot>> {
        let seed = episode_seed(config.base_seed, a, r);
        let record = run_episode(config, alphas[a], seed)?;
        Ok(turns.iter().map(|&t| Snapshot::at(&record, t)).collect())
    };
    let flat: Vec<Vec<Snapshot>> = match execution {
        Execution::Serial => jobs.iter().map(job).collect::<Result<_>>()?,
        Execution::Parallel => jobs.par_iter().map(job).collect::<Result<_>>()?,
    };
    let mut grid: Vec<Vec<Vec<Snapshot>>> = vec![Vec::new(); alphas.len()];
    for ((a, _), snaps) in jobs.into_iter().zip(flat) {
        grid[a].push(snaps);
    }
    Ok(grid)
}

fn aggregate(
    config: &ExperimentConfig,
    turns: &[usize],
    grid: &[Vec<Vec<Snapshot>>],
) -> Vec<AggregateRecord> {
    let alphas = config.alphas();
    let mut rows = Vec::with_capacity(alphas.len() * turns.len());
    for (a, reps) in grid.iter().enumerate() {
        for (c, &turn) in turns.iter().enumerate() {
            let column =
                |f: fn(&Snapshot) -> f64| reps.iter().map(|s| f(&s[c])).collect::<Vec<_>>();
            let (occ_mean, occ_std) = mean_std(&column(|s| s.regret_occupancy));
            let (lit_mean, lit_std) = mean_std(&column(|s| s.regret_literal));
            let (reward_mean, _) = mean_std(&column(|s| s.reward));
            let (loss_mean, _) = mean_std(&column(|s| s.loss));
            rows.push(AggregateRecord {
                algorithm: config.algorithm,
                alpha: alphas[a],
                turn,
                repetitions: reps.len(),
                regret_occupancy_mean: occ_mean,
                regret_occupancy_std: occ_std,
                regret_literal_mean: lit_mean,
                regret_literal_std: lit_std,
                reward_mean,
                loss_mean,
                seed_base: config.base_seed,
            });
        }
    }
    rows
}

/// One row per alpha, aggregated at the final turn.
pub fn sweep_alpha(
    config: &ExperimentConfig,
    execution: Execution,
) -> Result<Vec<AggregateRecord>> {
    let turns = [config.turns];
    let grid = run_grid(config, &turns, execution)?;
    Ok(aggregate(config, &turns, &grid))
}

/// One row per (alpha, checkpoint).
pub fn regret_vs_turns(
    config: &ExperimentConfig,
    execution: Execution,
) -> Result<Vec<AggregateRecord>> {
    let turns = config.checkpoints();
    let grid = run_grid(config, &turns, execution)?;
    Ok(aggregate(config, &turns, &grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::AlphaSpec;

    fn small(kind: PolicyKind) -> ExperimentConfig {
        ExperimentConfig {
            algorithm: kind,
            turns: 100,
            repetitions: 3,
            alpha: AlphaSpec::Sweep(vec![0.0, 1.0]),
            checkpoint_every: 25,
            ..Default::default()
        }
    }

    #[test]
    fn horizon_equal_to_arms_covers_each_arm_once() {
        for kind in [
            PolicyKind::Ucb1,
            PolicyKind::EpsilonGreedy,
            PolicyKind::Thompson,
            PolicyKind::AsympOpt,
        ] {
            let cfg = ExperimentConfig {
                turns: 10,
                ..small(kind)
            };
            let out = simulate_episode(&cfg, 0.5, 1, false).unwrap();
            for p in &out.players {
                assert_eq!(p.own_pulls(), &[1; 10], "{kind}");
            }
        }
    }

    #[test]
    fn no_communication_means_own_pulls_only() {
        for kind in PolicyKind::ALL {
            let out = simulate_episode(&small(kind), 0.0, 2, false).unwrap();
            for p in &out.players {
                let e = p.estimator();
                assert_eq!(e.total(), 100);
                for i in 0..10 {
                    assert_eq!(e.pulls(i), p.own_pulls()[i]);
                }
            }
        }
    }

    #[test]
    fn full_communication_sees_every_pull() {
        let out = simulate_episode(&small(PolicyKind::Thompson), 1.0, 3, false).unwrap();
        for p in &out.players {
            assert_eq!(p.estimator().total(), 500);
        }
    }

    #[test]
    fn episode_is_deterministic_and_matches_history() {
        let cfg = small(PolicyKind::EpsilonGreedy);
        let a = simulate_episode(&cfg, 0.5, 4, true).unwrap();
        let b = simulate_episode(&cfg, 0.5, 4, true).unwrap();
        assert_eq!(a.record, b.record);
        assert_eq!(
            a.history.as_ref().unwrap().turns,
            b.history.as_ref().unwrap().turns
        );
        let rebuilt =
            RunRecord::from_history(a.history.as_ref().unwrap(), a.record.metadata.clone())
                .unwrap();
        assert_eq!(rebuilt, a.record);
    }

    #[test]
    fn invalid_config_rejected_before_running() {
        let cfg = ExperimentConfig {
            n_players: 12,
            ..small(PolicyKind::Ucb1)
        };
        assert!(run_episode(&cfg, 0.0, 0).is_err());
        assert!(run_episode(&small(PolicyKind::Ucb1), 1.5, 0).is_err());
    }

    #[test]
    fn single_repetition_sweep_has_zero_spread() {
        let cfg = ExperimentConfig {
            repetitions: 1,
            ..small(PolicyKind::Ucb1)
        };
        let rows = sweep_alpha(&cfg, Execution::Serial).unwrap();
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert_eq!(r.regret_occupancy_std, 0.0);
            assert_eq!(r.regret_literal_std, 0.0);
            assert_eq!(r.turn, 100);
        }
    }

    #[test]
    fn curve_final_checkpoint_equals_sweep_row() {
        let cfg = small(PolicyKind::Thompson);
        let sweep = sweep_alpha(&cfg, Execution::Parallel).unwrap();
        let curve = regret_vs_turns(&cfg, Execution::Parallel).unwrap();
        assert_eq!(curve.len(), 2 * 4);
        let finals: Vec<_> = curve.iter().filter(|r| r.turn == 100).cloned().collect();
        assert_eq!(finals, sweep);
    }

    #[test]
    fn serial_and_parallel_agree() {
        let cfg = small(PolicyKind::AsympOpt);
        assert_eq!(
            regret_vs_turns(&cfg, Execution::Serial).unwrap(),
            regret_vs_turns(&cfg, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn repetition_index_changes_outcomes() {
        let cfg = small(PolicyKind::Thompson);
        let a = run_episode(&cfg, 0.5, episode_seed(cfg.base_seed, 0, 0)).unwrap();
        let b = run_episode(&cfg, 0.5, episode_seed(cfg.base_seed, 0, 1)).unwrap();
        assert_ne!(a.cumulative_reward, b.cumulative_reward);
    }

    #[test]
    fn mean_std_basics() {
        assert_eq!(mean_std(&[2.0]), (2.0, 0.0));
        let (m, s) = mean_std(&[1.0, 2.0, 3.0]);
        assert_eq!(m, 2.0);
        assert!((s - 1.0).abs() < 1e-15);
    }
}
