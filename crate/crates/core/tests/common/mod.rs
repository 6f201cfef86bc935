#![allow(dead_code)]

pub mod laws;

use std::sync::Arc;

use koszul_core::fplinalg::PrimeField;
use koszul_core::graded::{direct_sum, shift, GradedAlgebra, GradedModule, Submodule};
use koszul_core::monomial::{exterior_algebra, symmetric_algebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn field(rng: &mut ChaCha8Rng) -> PrimeField {
    PrimeField::new([2, 3, 5, 7][rng.gen_range(0..4)]).unwrap()
}

pub fn exterior(rng: &mut ChaCha8Rng, f: PrimeField, max_n: usize, d: usize) -> Arc<GradedAlgebra> {
    Arc::new(exterior_algebra(rng.gen_range(1..=max_n), f, d))
}

pub fn symmetric(
    rng: &mut ChaCha8Rng,
    f: PrimeField,
    max_n: usize,
    d: usize,
) -> Arc<GradedAlgebra> {
    Arc::new(symmetric_algebra(rng.gen_range(1..=max_n), f, d))
}

/// A quotient or a submodule of a free module of rank 1 or 2, cut out by a
/// few random elements in degrees 0..=2, shifted by a random amount.
pub fn module(rng: &mut ChaCha8Rng, a: &Arc<GradedAlgebra>) -> GradedModule {
    let f = a.field();
    let mut free = GradedModule::regular(a.clone());
    if rng.gen_bool(0.3) {
        free = direct_sum(&free, &shift(&GradedModule::regular(a.clone()), -1)).unwrap();
    }
    let mut gens = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let k = rng.gen_range(0..=2.min(free.top()));
        if free.dim(k) == 0 {
            continue;
        }
        let v: Vec<u32> = (0..free.dim(k)).map(|_| rng.gen_range(0..f.p())).collect();
        gens.push((k, v));
    }
    let sub = Submodule::generated_by(&free, &gens).unwrap();
    let m = if rng.gen_bool(0.5) {
        sub.quotient(&free).unwrap()
    } else {
        sub.to_module(&free).unwrap()
    };
    shift(&m, rng.gen_range(-1..=1))
}
