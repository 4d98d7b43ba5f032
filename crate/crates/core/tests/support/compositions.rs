//! Random cone-preserving compositions and Galilean shears with
//! constructible parameters.

use axkin_core::efield::{FieldElem, Point};
use axkin_core::linalg::AffineMap;
use axkin_core::xforms::{dilation, galilean_shear, lorentz_boost, spatial_rotation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Composition {
    pub map: AffineMap,
    pub scale: FieldElem,
}

fn rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(i);
    r
}

fn q(r: &mut ChaCha8Rng, bound: i64, den: i64) -> FieldElem {
    FieldElem::ratio(r.gen_range(-bound..=bound), den)
}

fn velocity(r: &mut ChaCha8Rng, d: usize) -> Vec<FieldElem> {
    // components in (−1/√d, 1/√d) keep |v| < 1
    let den = 4 * d as i64;
    (1..d).map(|_| q(r, 3, den)).collect()
}

/// boost ∘ rotation ∘ dilation ∘ translation.
pub fn composition(seed: u64, i: u64, d: usize) -> Composition {
    let mut r = rng(seed, i);
    let boost = lorentz_boost(d, &velocity(&mut r, d)).unwrap();
    let (cos, sin) = if r.gen_bool(0.5) {
        let t = q(&mut r, 5, 3);
        let one = FieldElem::one();
        let den = &one + &t.square();
        ((&one - &t.square()) / &den, (&t + &t) / &den)
    } else {
        let c = q(&mut r, 9, 10);
        let s = (FieldElem::one() - c.square()).sqrt().unwrap();
        (c, s)
    };
    let rotation = spatial_rotation(d, 1, 2, &cos, &sin).unwrap();
    let scale = if r.gen_bool(0.5) {
        FieldElem::ratio(r.gen_range(1..=9), r.gen_range(1..=4))
    } else {
        FieldElem::from_int(r.gen_range(2..=7)).sqrt().unwrap()
    };
    let dil = dilation(d, &scale).unwrap();
    let shift = AffineMap::translation(Point::new((0..d).map(|_| q(&mut r, 9, 2)).collect()));
    let map = boost.compose(&rotation.compose(&dil.compose(&shift)));
    Composition { map, scale }
}

pub fn shear(seed: u64, i: u64, d: usize) -> AffineMap {
    let mut r = rng(seed ^ 0x5eed, i);
    let mut v = velocity(&mut r, d);
    if v.iter().all(FieldElem::is_zero) {
        v[0] = FieldElem::ratio(1, 3);
    }
    galilean_shear(d, &v).unwrap()
}
