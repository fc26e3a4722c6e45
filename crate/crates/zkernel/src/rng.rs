//! Deterministic random streams keyed by `(seed, module, index)`.
//!
//! Every sample draws from its own ChaCha stream, so results do not depend
//! on iteration order or on how work is split across threads.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn keyed_rng(seed: u64, module: &str, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    let mut state = splitmix(seed) ^ fnv1a(module);
    for (i, chunk) in key.chunks_mut(8).enumerate() {
        state = splitmix(state ^ index.rotate_left(17 * i as u32));
        chunk.copy_from_slice(&state.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Uniform dyadic rational `m / 2^bits` in `[0, 1)`.
pub fn uniform_dyadic<R: RngCore>(rng: &mut R, bits: u32) -> BigRational {
    let words = bits.div_ceil(32);
    let mut m = BigInt::from(0u32);
    for _ in 0..words {
        m = (m << 32) + BigInt::from(rng.next_u32());
    }
    let excess = words * 32 - bits;
    m >>= excess as usize;
    BigRational::new(m, BigInt::from(1u32) << bits as usize)
}
