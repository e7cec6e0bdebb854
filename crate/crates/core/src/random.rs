//! Seeded generators for random complexes and pairs used by the verification sweeps.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{self, Mask};
use crate::complex::SimplicialComplex;

pub type SweepRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SweepRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random non-void complex on `[m]`: the closure of up to `m + 1` random faces.
/// Occasionally `{∅}`, occasionally the full simplex.
pub fn random_complex(rng: &mut SweepRng, m: usize) -> SimplicialComplex {
    let full = bits::full(m);
    match rng.gen_range(0..20) {
        0 => return SimplicialComplex::empty(m),
        1 => return SimplicialComplex::simplex(m, full),
        _ => {}
    }
    let count = rng.gen_range(1..=m + 1);
    let facets: Vec<Mask> = (0..count).map(|_| rng.gen_range(0..=full)).collect();
    SimplicialComplex::from_facets(m, &facets).expect("faces lie in the ground set")
}

/// A random complex on `[n]` that is neither void nor the full simplex.
pub fn random_proper_complex(rng: &mut SweepRng, n: usize) -> SimplicialComplex {
    loop {
        let k = random_complex(rng, n);
        if !k.is_simplex_on(bits::full(n)) {
            return k;
        }
    }
}

/// A random pair `A ⊆ X` on `[n]`: `X` random, `A` the closure of a random subset of its faces.
pub fn random_pair(rng: &mut SweepRng, n: usize) -> (SimplicialComplex, SimplicialComplex) {
    let x = random_complex(rng, n);
    let mut faces = x.faces().to_vec();
    faces.shuffle(rng);
    let keep = rng.gen_range(0..=faces.len());
    let a = SimplicialComplex::from_facets(n, &faces[..keep]).expect("faces lie in the ground set");
    (x, a)
}

/// A random vector of exponents in `1..=max`.
pub fn random_exponents(rng: &mut SweepRng, m: usize, max: u32) -> Vec<u32> {
    (0..m).map(|_| rng.gen_range(1..=max)).collect()
}
