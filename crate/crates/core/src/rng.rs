//! Seed derivation and named random substreams.
//!
//! Every random draw in an episode comes from a ChaCha stream whose seed is a
//! pure function of the episode seed, a role, and an index (a turn number or a
//! player id). Nothing is shared between roles, so adding draws to one role
//! never perturbs another.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random generator used throughout the simulator.
pub type SimRng = ChaCha8Rng;

/// Purpose of a substream within an episode.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StreamRole {
    /// Bernoulli draws of every arm, every turn.
    ArmRewards,
    /// Uniform winner selection on contested arms.
    Winners,
    /// Per-turn communication graph; indexed by turn.
    Graph,
    /// A player's own decisions; indexed by player.
    Player,
}

impl StreamRole {
    fn tag(self) -> u64 {
        match self {
            StreamRole::ArmRewards => 0x6172_6d73,
            StreamRole::Winners => 0x7769_6e73,
            StreamRole::Graph => 0x6772_6170,
            StreamRole::Player => 0x706c_6179,
        }
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of one episode inside a sweep: the base seed xor a hash of the
/// (alpha index, repetition) pair.
pub fn episode_seed(base_seed: u64, alpha_index: usize, repetition: usize) -> u64 {
    let h = mix64(mix64(alpha_index as u64 ^ 0xA1FA_0000_0000_0000) ^ repetition as u64);
    base_seed ^ h
}

/// Derives the seed of a role-keyed substream.
pub fn substream_seed(episode_seed: u64, role: StreamRole, index: u64) -> u64 {
    mix64(mix64(episode_seed ^ role.tag().rotate_left(32)) ^ mix64(index))
}

/// Opens a substream for `role` and `index` under `episode_seed`.
pub fn substream(episode_seed: u64, role: StreamRole, index: u64) -> SimRng {
    SimRng::seed_from_u64(substream_seed(episode_seed, role, index))
}
