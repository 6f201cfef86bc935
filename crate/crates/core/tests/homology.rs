use std::sync::Arc;

use koszul_core::fplinalg::{PrimeField, Subspace};
use koszul_core::graded::{GradedAlgebra, GradedModule, Submodule};
use koszul_core::homology::{
    bar_space_dim, homology_dim, homology_dim_with, homology_table, koszul_complex_tor, Strategy,
};
use koszul_core::monomial::{binomial, exterior_algebra, symmetric_algebra, truncation_module};

fn field(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

/// `Λ(V)/L_2 = k ⊕ V`, the cohomology of a free pro-p group on `dim V` generators.
fn free_group_module(lambda: &Arc<GradedAlgebra>) -> GradedModule {
    let reg = GradedModule::regular(lambda.clone());
    let l2 = truncation_module(lambda.clone(), 2);
    let spaces = (0..=lambda.top())
        .map(|k| {
            if l2.dim(k as i32) == 0 {
                Subspace::zero(lambda.field(), lambda.dim(k))
            } else {
                Subspace::full(lambda.field(), lambda.dim(k))
            }
        })
        .collect();
    Submodule::from_spaces(&reg, spaces)
        .unwrap()
        .quotient(&reg)
        .unwrap()
}

#[test]
fn bar_space_dims() {
    let a = Arc::new(exterior_algebra(2, field(2), 2));
    let k = GradedModule::trivial(a.clone());
    assert_eq!(bar_space_dim(&a, &k, 2, 3).unwrap(), 4);
    assert_eq!(bar_space_dim(&a, &k, 0, 0).unwrap(), 1);
    assert_eq!(bar_space_dim(&a, &k, 3, 2).unwrap(), 0);
}

#[test]
fn free_module_has_only_the_unit_class() {
    let a = Arc::new(exterior_algebra(3, field(3), 3));
    let reg = GradedModule::regular(a.clone());
    for i in 0..=3 {
        for j in 0..=5 {
            let expected = usize::from(i == 0 && j == 0);
            assert_eq!(homology_dim(&a, &reg, i, j).unwrap(), expected, "({i},{j})");
        }
    }
}

#[test]
fn exterior_residue_field_is_diagonal_with_symmetric_dims() {
    for p in [2, 3] {
        let n = 3;
        let a = Arc::new(exterior_algebra(n, field(p), n));
        let k = GradedModule::trivial(a.clone());
        for strategy in [Strategy::Bar, Strategy::Resolution] {
            for i in 0..=4 {
                for j in 0..=5 {
                    let expected = if i as i32 == j {
                        binomial(n + i - 1, i)
                    } else {
                        0
                    };
                    assert_eq!(
                        homology_dim_with(&a, &k, i, j, strategy).unwrap(),
                        expected,
                        "p={p} {strategy:?} ({i},{j})"
                    );
                }
            }
        }
    }
}

#[test]
fn free_group_cohomology_over_exterior_plane() {
    for p in [2, 3, 5] {
        let a = Arc::new(exterior_algebra(2, field(p), 2));
        let m = free_group_module(&a);
        assert_eq!(m.hilbert_function(), vec![1, 2, 0]);
        let t = homology_table(&a, &m, 5, 7).unwrap();
        for (i, j, d) in t.cells() {
            let expected = if (i, j) == (0, 0) {
                1
            } else if i >= 1 && j == i as i32 + 1 {
                i
            } else {
                0
            };
            assert_eq!(d, expected, "p={p} ({i},{j})");
        }
    }
}

#[test]
fn koszul_complex_agrees_on_residue_field() {
    let s = Arc::new(symmetric_algebra(3, field(5), 5));
    let k = GradedModule::trivial(s.clone());
    for i in 0..=3 {
        for j in 0..=4 {
            let expected = if i as i32 == j { binomial(3, i) } else { 0 };
            assert_eq!(koszul_complex_tor(&s, &k, i, j).unwrap(), expected);
            assert_eq!(
                homology_dim_with(&s, &k, i, j, Strategy::Bar).unwrap(),
                expected
            );
        }
    }
    let reg = GradedModule::regular(s.clone());
    assert_eq!(koszul_complex_tor(&s, &reg, 0, 0).unwrap(), 1);
    assert_eq!(koszul_complex_tor(&s, &reg, 1, 2).unwrap(), 0);
}

#[test]
fn koszul_complex_rejects_exterior() {
    let a = Arc::new(exterior_algebra(2, field(3), 2));
    let k = GradedModule::trivial(a.clone());
    assert!(koszul_complex_tor(&a, &k, 0, 0).is_err());
}
