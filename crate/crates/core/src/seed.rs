//! Seed derivation shared by every randomized operation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One step of the SplitMix64 generator, used as a bit mixer.
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Child seed number `index` of `master`.
///
/// `derive_seed(m, i) = splitmix64(m ^ splitmix64(i))`. The experiment runner
/// uses it for repeat seeds, so a report row's seed can be recomputed from the
/// master seed and the repeat index alone.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index))
}

/// The generator behind every seeded operation. ChaCha8 output is stable
/// across platforms and crate versions.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
