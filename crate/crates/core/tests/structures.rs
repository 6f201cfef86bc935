use std::sync::Arc;

use koszul_core::criteria::j_mod_w_star;
use koszul_core::fplinalg::{PrimeField, Subspace};
use koszul_core::graded::{quotient_algebra, tensor_algebra, GradedModule, Submodule};
use koszul_core::groups::demushkin_relations;
use koszul_core::monomial::{binomial, exterior_algebra, symmetric_algebra};
use koszul_core::quadratic::{
    ideal_in_exterior, quadratic_dual_module, quadratic_part_module, realize_algebra,
    realize_module, QuadraticAlgebraPresentation, QuadraticModulePresentation,
};

fn f(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn split_form(field: PrimeField) -> Subspace {
    Subspace::from_vectors(field, 6, &[vec![1, 0, 0, 0, 0, 1]]).unwrap()
}

#[test]
fn exterior_tensor_square() {
    for p in [2, 3, 7] {
        let l2 = exterior_algebra(2, f(p), 2);
        let t = tensor_algebra(&l2, &l2).unwrap();
        assert_eq!(t.hilbert_function(), vec![1, 4, 6, 4, 1]);
        assert_eq!(t, exterior_algebra(4, f(p), 4));
    }
}

#[test]
fn split_form_ideal_and_quotient() {
    let lambda = Arc::new(exterior_algebra(4, f(2), 4));
    let regular = GradedModule::regular(lambda.clone());
    let sub = Submodule::generated_by(&regular, &[(2, vec![1, 0, 0, 0, 0, 1])]).unwrap();
    assert_eq!(sub.dims(), vec![0, 0, 1, 4, 1]);
    let q = quotient_algebra(&lambda, &sub).unwrap();
    assert_eq!(q.hilbert_function(), vec![1, 4, 5, 0, 0]);

    let ideal = ideal_in_exterior(lambda, &split_form(f(2))).unwrap();
    assert_eq!(ideal.submodule.dims(), vec![0, 0, 1, 4, 1]);
}

#[test]
fn split_form_quadratic_part_is_free_of_rank_one() {
    let field = f(2);
    let lambda = Arc::new(exterior_algebra(4, field, 4));
    let ideal = ideal_in_exterior(lambda, &split_form(field)).unwrap();
    let shifted = koszul_core::graded::shift(&ideal.module, 2);
    let q = quadratic_part_module(&shifted).unwrap();
    assert_eq!(q.h_dim, 1);
    assert!(q.relations.is_zero());
    let realized = realize_module(&q, 4).unwrap();
    assert_eq!(realized.hilbert_function(), vec![1, 4, 6, 4, 1]);
    // The actual module has dims (1, 4, 1): it is not quadratic.
    let dims: Vec<usize> = (0..=2).map(|k| shifted.dim(k)).collect();
    assert_eq!(dims, vec![1, 4, 1]);
}

#[test]
fn ideal_dual_matches_j_mod_w_star() {
    for (p, r2) in [
        (2, split_form(f(2))),
        (3, demushkin_relations(4, f(3)).unwrap()),
    ] {
        let field = f(p);
        let lambda = Arc::new(exterior_algebra(4, field, 6));
        let ideal = ideal_in_exterior(lambda, &r2).unwrap();
        let q = quadratic_part_module(&koszul_core::graded::shift(&ideal.module, 2)).unwrap();
        let dual = realize_module(&quadratic_dual_module(&q), 4).unwrap();
        let jw = j_mod_w_star(4, field, ideal.submodule.space(2).unwrap(), 6).unwrap();
        // J/<W*> starts in degree 2.
        for k in 0..=4 {
            assert_eq!(dual.dim(k), jw.dim(k + 2), "p={p} degree {k}");
        }
    }
}

#[test]
fn quotient_plus_ideal_is_exterior() {
    let field = f(3);
    let lambda = Arc::new(exterior_algebra(5, field, 5));
    let r2 = Subspace::from_vectors(
        field,
        10,
        &[
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 2],
            vec![0, 1, 1, 0, 0, 0, 0, 1, 0, 0],
        ],
    )
    .unwrap();
    let ideal = ideal_in_exterior(lambda, &r2).unwrap();
    for k in 0..=5 {
        assert_eq!(
            ideal.submodule.dims()[k] + ideal.quotient.dim(k),
            binomial(5, k)
        );
    }
}

#[test]
fn trivial_and_free_presentations_realize() {
    let field = f(5);
    let s = QuadraticAlgebraPresentation::symmetric(field, 3);
    assert_eq!(
        realize_algebra(&s, 4).unwrap().hilbert_function(),
        symmetric_algebra(3, field, 4).hilbert_function()
    );
    let free = realize_module(&QuadraticModulePresentation::free(2, s.clone()), 3).unwrap();
    assert_eq!(free.hilbert_function(), vec![2, 6, 12, 20]);
    let trivial = realize_module(&QuadraticModulePresentation::trivial(2, s), 3).unwrap();
    assert_eq!(trivial.hilbert_function()[..1], [2]);
    assert!(trivial.hilbert_function()[1..].iter().all(|&d| d == 0));
}
