//! Seeded randomness shared by the generators and falsifiers.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Scalar};

pub type Rng8 = ChaCha8Rng;

pub fn seeded(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `[-9, 9] \ {0}`.
pub fn small_nonzero(rng: &mut Rng8) -> i64 {
    let v = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        -v
    } else {
        v
    }
}

/// Uniform integer in `[-bound, bound]`.
pub fn small(rng: &mut Rng8, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn scalar_vec(rng: &mut Rng8, field: Field, len: usize, bound: i64) -> Vec<Scalar> {
    (0..len).map(|_| field.from_i64(small(rng, bound))).collect()
}
