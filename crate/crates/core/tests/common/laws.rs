//! Randomized laws, one case per seed. Shared by the property suites and the
//! acceptance run.

use std::sync::Arc;

use koszul_core::fplinalg::Subspace;
use koszul_core::graded::{shift, tensor_module};
use koszul_core::homology::{
    bar_square_is_zero, certified, homology_dim, homology_dim_with, koszul_complex_tor, Strategy,
};
use koszul_core::monomial::{binomial, exterior_algebra};
use koszul_core::quadratic::ideal_in_exterior;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::Rng;

use super::{exterior, field, module, rng, symmetric};

const D: usize = 5;

type Outcome = Result<(), TestCaseError>;

/// `H_{i,j}(A, M) = 0` for `j < i + m` where `m` is the lowest degree of `M`.
pub fn vanishing(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let f = field(&mut r);
    let a = if r.gen_bool(0.5) {
        exterior(&mut r, f, 3, D)
    } else {
        symmetric(&mut r, f, 2, D)
    };
    let m = module(&mut r, &a);
    if let Some(low) = m.lowest_degree() {
        for i in 0..=3usize {
            for j in m.start()..i as i32 + low {
                prop_assert_eq!(homology_dim(&a, &m, i, j).unwrap(), 0);
            }
        }
        // the bottom of the module shows up in H_{0, low}
        prop_assert!(homology_dim(&a, &m, 0, low).unwrap() > 0);
    }
    Ok(())
}

/// `H_{i,j}(A, M(k)) = H_{i,j+k}(A, M)`.
pub fn shift_law(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let f = field(&mut r);
    let a = exterior(&mut r, f, 3, D);
    let m = module(&mut r, &a);
    let k = r.gen_range(-2..=2);
    let s = shift(&m, k);
    for i in 0..=3usize {
        for j in s.start()..=s.top() {
            if certified(&a, &s, i, j) {
                prop_assert_eq!(
                    homology_dim(&a, &s, i, j).unwrap(),
                    homology_dim(&a, &m, i, j + k).unwrap()
                );
            }
        }
    }
    Ok(())
}

/// `H_{i,j}(A ⊗ B, M ⊗ N)` is the convolution of the two tables.
pub fn kunneth(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let f = field(&mut r);
    let a = exterior(&mut r, f, 2, 4);
    let b = if r.gen_bool(0.5) {
        exterior(&mut r, f, 2, 4)
    } else {
        symmetric(&mut r, f, 1, 4)
    };
    let m = module(&mut r, &a);
    let n = module(&mut r, &b);
    let mn = tensor_module(&m, &n).unwrap();
    let ab = mn.algebra().clone();
    for i in 0..=2usize {
        for j in mn.start()..=mn.top() {
            if !certified(&ab, &mn, i, j) {
                continue;
            }
            let mut want = 0;
            let mut known = true;
            for i1 in 0..=i {
                for j1 in m.start()..=j - n.start() {
                    let (i2, j2) = (i - i1, j - j1);
                    if !certified(&a, &m, i1, j1) || !certified(&b, &n, i2, j2) {
                        known = false;
                        continue;
                    }
                    want += homology_dim(&a, &m, i1, j1).unwrap()
                        * homology_dim(&b, &n, i2, j2).unwrap();
                }
            }
            if known {
                prop_assert_eq!(
                    homology_dim(&ab, &mn, i, j).unwrap(),
                    want,
                    "cell ({}, {})",
                    i,
                    j
                );
            }
        }
    }
    Ok(())
}

/// The bar differentials compose to zero.
pub fn square_zero(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let f = field(&mut r);
    let a = if r.gen_bool(0.5) {
        exterior(&mut r, f, 3, D)
    } else {
        symmetric(&mut r, f, 2, D)
    };
    let m = module(&mut r, &a);
    let i = r.gen_range(1..=3);
    let j = r.gen_range(m.start()..=m.top());
    if certified(&a, &m, i + 1, j) {
        prop_assert!(bar_square_is_zero(&a, &m, i, j).unwrap());
    }
    Ok(())
}

/// Over `S(V)` the Koszul complex and the bar complex give the same Tor.
pub fn koszul_vs_bar(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let f = field(&mut r);
    let s = symmetric(&mut r, f, 3, D);
    let m = module(&mut r, &s);
    for i in 0..=3usize {
        for j in m.start()..=m.top() {
            if certified(&s, &m, i, j) && m.known(j - i as i32 + 1) {
                prop_assert_eq!(
                    koszul_complex_tor(&s, &m, i, j).unwrap(),
                    homology_dim_with(&s, &m, i, j, Strategy::Bar).unwrap(),
                    "cell ({}, {})",
                    i,
                    j
                );
            }
        }
    }
    Ok(())
}

/// The bar complex and a minimal resolution give the same Tor.
pub fn bar_vs_resolution(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let f = field(&mut r);
    let a = if r.gen_bool(0.5) {
        exterior(&mut r, f, 3, D)
    } else {
        symmetric(&mut r, f, 2, D)
    };
    let m = module(&mut r, &a);
    for i in 0..=3usize {
        for j in m.start()..=m.top() {
            if certified(&a, &m, i, j) {
                prop_assert_eq!(
                    homology_dim_with(&a, &m, i, j, Strategy::Bar).unwrap(),
                    homology_dim_with(&a, &m, i, j, Strategy::Resolution).unwrap(),
                    "cell ({}, {})",
                    i,
                    j
                );
            }
        }
    }
    Ok(())
}

/// `dim I_k + dim (Λ/I)_k = C(n, k)` for ideals generated in degree 2.
pub fn ideal_complement(seed: u64) -> Outcome {
    let mut r = rng(seed);
    let f = field(&mut r);
    let n = r.gen_range(2..=5);
    let c = binomial(n, 2);
    let gens: Vec<Vec<u32>> = (0..r.gen_range(0..=c))
        .map(|_| (0..c).map(|_| r.gen_range(0..f.p())).collect())
        .collect();
    let r2 = Subspace::from_vectors(f, c, &gens).unwrap();
    let lambda = Arc::new(exterior_algebra(n, f, n));
    let ideal = ideal_in_exterior(lambda, &r2).unwrap();
    prop_assert_eq!(ideal.submodule.dims()[2], r2.dim());
    for k in 0..=n {
        prop_assert_eq!(
            ideal.submodule.dims()[k] + ideal.quotient.dim(k),
            binomial(n, k)
        );
    }
    Ok(())
}
