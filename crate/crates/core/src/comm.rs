//! Per-turn Erdős–Rényi communication and one-hop dissemination.

use rand::Rng;

use crate::env::TurnOutcome;
use crate::error::{Error, Result};
use crate::rng::SimRng;

/// Undirected simple graph over players, redrawn every turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommGraph {
    n_players: usize,
    /// Pairs stored as `(lo, hi)` with `lo < hi`, in lexicographic order.
    edges: Vec<(usize, usize)>,
}

impl CommGraph {
    pub fn empty(n_players: usize) -> Self {
        Self {
            n_players,
            edges: Vec::new(),
        }
    }

    /// Builds a graph from arbitrary pairs, normalizing order and rejecting
    /// self-loops, duplicates, and out-of-range players.
    pub fn from_edges(n_players: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(pairs.len());
        for &(a, b) in pairs {
            if a == b || a >= n_players || b >= n_players {
                return Err(Error::config(format!(
                    "invalid edge ({a}, {b}) for {n_players} players"
                )));
            }
            edges.push((a.min(b), a.max(b)));
        }
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        if edges.len() != before {
            return Err(Error::config("duplicate edge"));
        }
        Ok(Self { n_players, edges })
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }
}

/// An (arm, reward) report, either a player's own or a neighbor's.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Observation {
    pub arm: usize,
    pub reward: u8,
    pub source: usize,
}

/// Includes each of the `N(N-1)/2` pairs independently with probability `alpha`.
pub fn sample_graph(n_players: usize, alpha: f64, rng: &mut SimRng) -> Result<CommGraph> {
    if n_players == 0 {
        return Err(Error::config(
            "communication graph needs at least one player",
        ));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::config(format!("alpha {alpha} outside [0, 1]")));
    }
    let mut edges = Vec::new();
    for a in 0..n_players {
        for b in (a + 1)..n_players {
            // random::<f64>() lies in [0, 1): alpha = 0 never fires, alpha = 1 always does
            if rng.random::<f64>() < alpha {
                edges.push((a, b));
            }
        }
    }
    Ok(CommGraph { n_players, edges })
}

/// Delivers every player's own (arm, realized reward) to itself and to each
/// current neighbor. Collision losers therefore report 0.
pub fn disseminate(outcome: &TurnOutcome, graph: &CommGraph) -> Vec<Vec<Observation>> {
    let n = outcome.n_players();
    debug_assert_eq!(graph.n_players(), n);
    let report = |p: usize| Observation {
        arm: outcome.choices[p],
        reward: outcome.realized_rewards[p],
        source: p,
    };
    let mut inbox: Vec<Vec<Observation>> = (0..n).map(|p| vec![report(p)]).collect();
    for &(a, b) in graph.edges() {
        inbox[a].push(report(b));
        inbox[b].push(report(a));
    }
    inbox
}
