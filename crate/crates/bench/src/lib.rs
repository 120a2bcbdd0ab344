//! Seeded benchmark workloads.

use pathsum::gen;
use pathsum::pathsum::{build_circuit, Circuit};
use pathsum::{Context, PathSum, RingSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` random closed sums over `ring`.
pub fn closed_sums(ring: RingSpec, multiplicative: bool, count: usize, seed: u64) -> Vec<PathSum> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen::random_closed_sum(&mut rng, ring, multiplicative)).collect()
}

/// A random Clifford circuit and a padded copy of it.
pub fn clifford_pair(qubits: usize, gates: usize, seed: u64) -> (Circuit, Circuit) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = gen::random_clifford(&mut rng, qubits, gates);
    let p = gen::pad_clifford(&mut rng, &c, gates / 4 + 1);
    (c, p)
}

pub fn build(c: &Circuit) -> PathSum {
    let mut ctx = Context::new(c.ring);
    build_circuit(&mut ctx, c).expect("generated circuits are valid")
}
