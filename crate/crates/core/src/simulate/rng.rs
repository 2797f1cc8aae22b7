//! Per-trial random streams.
//!
//! Trial `k` of a run with seed `s` owns a ChaCha8 key derived from `(s, k)`;
//! stream 0 of that key places the germs and stream `j + 1` drives the path
//! of germ `j`. Nothing depends on the order in which trials are executed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer, a bijection on `u64`.
pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for `(seed, trial, stream)`.
pub fn trial_rng(seed: u64, trial: u64, stream: u64) -> ChaCha8Rng {
    let words = [
        mix64(seed),
        mix64(seed ^ 0xA5A5_A5A5_A5A5_A5A5),
        mix64(trial),
        mix64(trial ^ 0x5A5A_5A5A_5A5A_5A5A),
    ];
    let mut key = [0u8; 32];
    for (chunk, w) in key.chunks_exact_mut(8).zip(words) {
        chunk.copy_from_slice(&w.to_le_bytes());
    }
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(stream);
    rng
}
