//! The single seeded generator every randomized routine draws from.

use rand::SeedableRng;

pub type Rng = rand_chacha::ChaCha8Rng;

/// Identity recorded in run manifests so experiments can be replayed.
pub const GENERATOR: &str = "rand_chacha::ChaCha8Rng v0.3 seed_from_u64";

pub fn seeded(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}
