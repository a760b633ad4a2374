//! Seeding discipline.
//!
//! All randomness in the crate flows through ChaCha streams derived from a
//! `(seed, role)` pair, optionally refined by a per-round index. The role is
//! a short static string ("noise", "arms", "traj", ...). Two consumers with
//! different roles never share a stream, so adding a draw in one place can
//! never perturb another, and identical `(seed, role, index)` triples produce
//! identical streams on every platform.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// SplitMix64 step; the standard 64-bit finalizer used to expand seed material.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// A ChaCha stream for `(seed, role)`.
pub fn stream(seed: u64, role: &str) -> ChaCha12Rng {
    indexed_stream(seed, role, 0)
}

/// A ChaCha stream for `(seed, role, index)`; `index` is typically a round
/// or episode counter, so per-round draws are independent of call order.
pub fn indexed_stream(seed: u64, role: &str, index: u64) -> ChaCha12Rng {
    let mut state = seed ^ fnv1a(role.as_bytes()).rotate_left(17) ^ index.wrapping_mul(0xa076_1d64_78bd_642f);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha12Rng::from_seed(key)
}
