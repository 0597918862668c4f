//! Seeded random streams.
//!
//! Every stochastic component draws from a `Pcg64` (PCG XSL RR 128/64) generator.
//! Independent streams are derived from a user seed and a stream label through
//! SplitMix64, so a fixed seed reproduces on every platform.

use rand::SeedableRng;
use rand_pcg::Pcg64;

pub type Rng = Pcg64;

/// Stream labels used inside the crate. Adding a label never perturbs the others.
pub mod streams {
    pub const SYNTHETIC_CATALOG: u64 = 1;
    pub const SYNTHETIC_BATCHES: u64 = 2;
    pub const SYNTHETIC_LAYOUT: u64 = 3;
    pub const RANDOM_BASELINE: u64 = 10;
    pub const MOVE_KIND: u64 = 20;
    pub const CONTAINER_SWAP: u64 = 21;
    pub const SUBSECTION_SWAP: u64 = 22;
    pub const ACCEPTANCE: u64 = 23;
}

#[inline]
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for `stream` under the user `seed`.
pub fn stream(seed: u64, stream: u64) -> Rng {
    let a = splitmix64(seed ^ splitmix64(stream));
    let b = splitmix64(a);
    let c = splitmix64(b);
    let d = splitmix64(c);
    let mut bytes = [0u8; 32];
    for (chunk, word) in bytes.chunks_exact_mut(8).zip([a, b, c, d]) {
        chunk.copy_from_slice(&word.to_le_bytes());
    }
    Pcg64::from_seed(bytes)
}
