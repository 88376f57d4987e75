use crate::comm::Observation;

/// Per-arm tallies a player has seen, own pulls and neighbor reports alike.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayerEstimator {
    pulls: Vec<u64>,
    successes: Vec<u64>,
    failures: Vec<u64>,
    total: u64,
}

impl PlayerEstimator {
    pub fn new(n_arms: usize) -> Self {
        Self {
            pulls: vec![0; n_arms],
            successes: vec![0; n_arms],
            failures: vec![0; n_arms],
            total: 0,
        }
    }

    pub fn n_arms(&self) -> usize {
        self.pulls.len()
    }

    pub fn record(&mut self, arm: usize, reward: u8) {
        self.pulls[arm] += 1;
        if reward > 0 {
            self.successes[arm] += 1;
        } else {
            self.failures[arm] += 1;
        }
        self.total += 1;
    }

    pub fn observe(&mut self, observations: &[Observation]) {
        for obs in observations {
            self.record(obs.arm, obs.reward);
        }
    }

    pub fn pulls(&self, arm: usize) -> u64 {
        self.pulls[arm]
    }

    pub fn successes(&self, arm: usize) -> u64 {
        self.successes[arm]
    }

    pub fn failures(&self, arm: usize) -> u64 {
        self.failures[arm]
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    /// Observed mean of `arm`, `None` before the first observation.
    pub fn mean(&self, arm: usize) -> Option<f64> {
        match self.pulls[arm] {
            0 => None,
            n => Some(self.successes[arm] as f64 / n as f64),
        }
    }

    /// Overwrites the tallies of one arm. Mostly useful for setting up tests.
    pub fn set_tally(&mut self, arm: usize, successes: u64, failures: u64) {
        self.total -= self.pulls[arm];
        self.successes[arm] = successes;
        self.failures[arm] = failures;
        self.pulls[arm] = successes + failures;
        self.total += self.pulls[arm];
    }

    pub fn is_consistent(&self) -> bool {
        (0..self.n_arms()).all(|i| self.successes[i] + self.failures[i] == self.pulls[i])
            && self.pulls.iter().sum::<u64>() == self.total
    }
}
