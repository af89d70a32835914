//! Reproducible random sub-streams.
//!
//! Every stochastic step draws from a ChaCha stream keyed by the master seed
//! and a small tuple of coordinates (generation, individual, ...), so work can
//! be split across threads without changing results.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Derives an independent stream from `seed` and the given coordinates.
pub fn substream(seed: u64, keys: &[u64]) -> Stream {
    let mut h = splitmix(seed);
    for &k in keys {
        h = splitmix(h ^ splitmix(k));
    }
    ChaCha8Rng::seed_from_u64(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn same_keys_same_stream() {
        let a: Vec<u64> = (0..4).map(|_| 0).collect();
        let mut s1 = substream(7, &[1, 2]);
        let mut s2 = substream(7, &[1, 2]);
        let x: Vec<u64> = a.iter().map(|_| s1.random()).collect();
        let y: Vec<u64> = a.iter().map(|_| s2.random()).collect();
        assert_eq!(x, y);
    }

    #[test]
    fn different_keys_differ() {
        let mut s1 = substream(7, &[1, 2]);
        let mut s2 = substream(7, &[2, 1]);
        assert_ne!(s1.random::<u64>(), s2.random::<u64>());
    }
}
