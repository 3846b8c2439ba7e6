#![allow(dead_code)]

use pbbs::Path;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const GOLDEN: &str = "00111011100100011110001101000000";

pub fn p(s: &str) -> Path {
    s.parse().unwrap()
}

pub fn all_paths(max_len: usize) -> impl Iterator<Item = Path> {
    (1..=max_len).flat_map(|len| (0..1u64 << len).map(move |bits| Path::from_bits(len, bits)))
}

pub fn positive_paths(max_len: usize) -> impl Iterator<Item = Path> {
    all_paths(max_len).filter(Path::is_positive_weight)
}

pub fn yamanouchi_paths(max_len: usize) -> impl Iterator<Item = Path> {
    all_paths(max_len).filter(Path::is_yamanouchi)
}

/// Uniform length in `1..=max_len`, ball count in `0..=len/2`, positions uniform.
pub fn random_positive(rng: &mut ChaCha8Rng, max_len: usize) -> Path {
    let len = rng.gen_range(1..=max_len);
    let balls = rng.gen_range(0..=len / 2);
    let mut letters = vec![0u8; len];
    for i in sample(rng, len, balls) {
        letters[i] = 1;
    }
    Path::new(letters).unwrap()
}

pub fn random_positive_paths(count: usize, max_len: usize, seed: u64) -> Vec<Path> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_positive(&mut rng, max_len)).collect()
}

pub fn random_yamanouchi_paths(count: usize, max_len: usize, seed: u64) -> Vec<Path> {
    random_positive_paths(count, max_len, seed)
        .into_iter()
        .map(|q| q.canonical_cut().unwrap().1)
        .collect()
}
