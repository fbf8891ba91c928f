//! Seeded inputs shared by the benchmarks.

use std::sync::Arc;

use garside::{catalog, Element, GarsideStructure, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn structure(name: &str) -> Arc<GarsideStructure> {
    catalog::build(name).unwrap_or_else(|e| panic!("{name}: {e}")).structure
}

pub fn signed(s: &GarsideStructure, seed: u64, len: usize) -> Vec<Letter> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = s.num_atoms() as u32;
    (0..len)
        .map(|_| {
            let a = rng.random_range(0..k);
            if rng.random_bool(0.5) {
                Letter::Atom(a)
            } else {
                Letter::Inverse(a)
            }
        })
        .collect()
}

pub fn positive(s: &GarsideStructure, seed: u64, len: usize) -> Element {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = s.num_atoms() as u32;
    let word: Vec<u32> = (0..len).map(|_| rng.random_range(0..k)).collect();
    s.from_atoms(&word)
}

/// `count` signed elements of length `len`, seeds `0..count`.
pub fn sample(s: &GarsideStructure, count: u64, len: usize) -> Vec<Element> {
    (0..count).map(|i| s.normal_form(&signed(s, i, len))).collect()
}
