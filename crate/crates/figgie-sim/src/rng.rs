//! Deterministic random-number streams.
//!
//! A single master seed fans out into independent named streams (dealing,
//! per-agent event delays, per-agent strategy noise, bootstrap resampling)
//! so that adding an agent or reordering draws in one stream never
//! perturbs another. The derivation is a fixed 64-bit mix, documented here
//! so external tools can reproduce any single game from the master seed
//! and the game index alone:
//!
//! ```text
//! game_seed(master, index) = mix(master ^ mix(GAME_SALT ^ index))
//! stream_seed(seed, id)    = mix(seed ^ mix(id))
//! ```
//!
//! where `mix` is the splitmix64 finalizer.

use rand_chacha::ChaCha12Rng;
use rand_chacha::rand_core::SeedableRng;

const GAME_SALT: u64 = 0x6669_6767_6965_2147; // "figgie!G"

/// splitmix64 output function: a bijective 64-bit avalanche mix.
pub fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Stable per-game seed derived from the experiment master seed.
pub fn game_seed(master_seed: u64, game_index: u64) -> u64 {
    mix(master_seed ^ mix(GAME_SALT ^ game_index))
}

/// Named sub-streams of one game's seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamId {
    /// Deck selection and shuffling.
    Deal,
    /// Consideration-delay draws for one agent.
    Delay(usize),
    /// Strategy-internal randomness (prices, coin flips) for one agent.
    Strategy(usize),
    /// Bootstrap resampling for one (a, b) report pair.
    Bootstrap(usize, usize),
}

impl StreamId {
    fn salt(self) -> u64 {
        match self {
            StreamId::Deal => 0x01,
            StreamId::Delay(agent) => 0x100 + agent as u64,
            StreamId::Strategy(agent) => 0x200 + agent as u64,
            StreamId::Bootstrap(a, b) => 0x300 + ((a as u64) << 8) + b as u64,
        }
    }
}

/// A deterministic generator for one named stream.
pub fn stream(seed: u64, id: StreamId) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(mix(seed ^ mix(id.salt())))
}
