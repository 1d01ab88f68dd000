//! Split-stream seeding.
//!
//! Stream `i` of a master seed `s` is a ChaCha8 generator seeded with
//! `mix(s, i)`, where `mix` is the SplitMix64 finalizer applied to
//! `s ^ finalize(i + 0x9E3779B97F4A7C15)`. Distinct `(s, i)` pairs give
//! independent-looking streams, so trials can be replayed individually.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{Field, PrimeField};
use crate::projgeom::ProjPoint;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn finalize(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn mix(master: u64, index: u64) -> u64 {
    finalize(master ^ finalize(index.wrapping_add(GOLDEN_GAMMA)))
}

pub type StreamRng = ChaCha8Rng;

pub fn stream(master: u64, index: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(mix(master, index))
}

/// Salted sub-stream, for drivers that need several independent families of
/// streams under one master seed.
pub fn substream(master: u64, salt: u64, index: u64) -> StreamRng {
    stream(mix(master, salt), index)
}

pub(crate) fn random_elem(f: &PrimeField, rng: &mut StreamRng) -> u32 {
    rng.gen_range(0..f.modulus())
}

/// Uniform point of P^m(F_p).
pub(crate) fn random_point(f: &PrimeField, ambient_dim: usize, rng: &mut StreamRng) -> ProjPoint<PrimeField> {
    loop {
        let v: Vec<u32> = (0..=ambient_dim).map(|_| random_elem(f, rng)).collect();
        if v.iter().any(|x| !f.is_zero(x)) {
            return ProjPoint::new(f, v).expect("nonzero vector");
        }
    }
}

/// Uniform k-subset of 0..n (Floyd's algorithm), sorted.
pub(crate) fn random_subset(n: usize, k: usize, rng: &mut StreamRng) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    for j in n - k..n {
        let t = rng.gen_range(0..=j);
        if chosen.contains(&t) {
            chosen.push(j);
        } else {
            chosen.push(t);
        }
    }
    chosen.sort_unstable();
    chosen
}
