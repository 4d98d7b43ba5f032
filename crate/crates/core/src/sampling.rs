//! Seeded randomness. Every sample index gets its own ChaCha stream so results
//! do not depend on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::efield::{FieldElem, Point};

pub type SampleRng = ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Rational with denominator in 1..=den and absolute value below `bound`.
pub fn rational(rng: &mut SampleRng, bound: i64, den: i64) -> FieldElem {
    let d = rng.gen_range(1..=den);
    let n = rng.gen_range(-(bound * d - 1)..=(bound * d - 1));
    FieldElem::ratio(n, d)
}

/// Rational strictly inside (0, 1).
pub fn unit_open(rng: &mut SampleRng, den: i64) -> FieldElem {
    let d = rng.gen_range(2..=den.max(2));
    let n = rng.gen_range(1..d);
    FieldElem::ratio(n, d)
}

pub fn positive(rng: &mut SampleRng, bound: i64, den: i64) -> FieldElem {
    let d = rng.gen_range(1..=den);
    let n = rng.gen_range(1..=(bound * d));
    FieldElem::ratio(n, d)
}

pub fn point(rng: &mut SampleRng, d: usize, bound: i64, den: i64) -> Point {
    Point::new((0..d).map(|_| rational(rng, bound, den)).collect())
}

/// Direction (1, v) with each |v_i| < bound.
pub fn unit_time_direction(rng: &mut SampleRng, d: usize, bound: i64, den: i64) -> Point {
    let mut v = vec![FieldElem::one()];
    v.extend((1..d).map(|_| rational(rng, bound, den)));
    Point::new(v)
}
