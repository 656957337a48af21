use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{standard_generators, PL2Map};
use crate::group::GroupElement;

/// A random word of length `len` in `x0^{±1}, x1^{±1}`.
pub fn random_word<R: Rng>(rng: &mut R, len: usize) -> PL2Map {
    let (x0, x1) = standard_generators();
    let gens = [x0.clone(), x0.inverse(), x1.clone(), x1.inverse()];
    (0..len).fold(PL2Map::identity(), |acc, _| {
        acc.compose(&gens[rng.gen_range(0..4)])
    })
}

/// A deterministic pseudo-random element of `F'`: a product of `complexity`
/// conjugated commutators `u [w1, w2] u^-1` of short words in the standard
/// generators.
pub fn random_fprime(seed: u64, complexity: usize) -> PL2Map {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = PL2Map::identity();
    for _ in 0..complexity {
        let len = rng.gen_range(1..=3);
        let w1 = random_word(&mut rng, len);
        let len = rng.gen_range(1..=3);
        let w2 = random_word(&mut rng, len);
        let len = rng.gen_range(0..=2);
        let u = random_word(&mut rng, len);
        acc = acc.compose(&w1.commutator(&w2).conjugate_by(&u));
    }
    acc
}
