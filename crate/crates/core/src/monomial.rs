//! Exterior and symmetric algebras in monomial bases, the truncations
//! `A_{≥k}` and the syzygy module `J`.
//!
//! Exterior basis in degree `k`: the `k`-subsets of `{0..n-1}` in
//! lexicographic order. Symmetric basis in degree `k`: nondecreasing index
//! sequences of length `k` in lexicographic order (so `x0^2, x0 x1, x1^2`).

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::fplinalg::{FpMatrix, PrimeField, SparseVec, Subspace};
use crate::graded::{GradedAlgebra, GradedModule, Submodule};

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The `k`-subsets of `{0..n-1}` as bitmasks, in lexicographic order of the
/// sorted index lists.
pub fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn rec(n: usize, k: usize, from: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for s in from..=n - k {
            rec(n, k - 1, s + 1, acc | 1 << s, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, 0, &mut out);
    }
    out
}

/// Sign of `e_S · e_T` for disjoint `S`, `T`: `(-1)^{#{(s,t) : s > t}}`.
pub fn exterior_sign(s: u64, t: u64) -> usize {
    let mut count = 0;
    let mut rest = t;
    while rest != 0 {
        let b = rest.trailing_zeros();
        count += (s >> b >> 1).count_ones() as usize;
        rest &= rest - 1;
    }
    count % 2
}

/// The nondecreasing index sequences of length `k` over `0..n`, lexicographic.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<u8>> {
    fn rec(n: usize, k: usize, from: usize, acc: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if k == 0 {
            out.push(acc.clone());
            return;
        }
        for s in from..n {
            acc.push(s as u8);
            rec(n, k - 1, s, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 || k == 0 {
        rec(n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// `Λ(F_p^n)` stored through degree `min(d, n)`; complete when `d >= n`.
pub fn exterior_algebra(n: usize, field: PrimeField, d: usize) -> GradedAlgebra {
    assert!(n <= 64, "exterior algebra on more than 64 generators");
    let top = d.min(n);
    let bases: Vec<Vec<u64>> = (0..=top).map(|k| subsets(n, k)).collect();
    let index: Vec<HashMap<u64, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(i, &s)| (s, i)).collect())
        .collect();
    let dims = bases.iter().map(Vec::len).collect();
    GradedAlgebra::from_fn_unchecked(field, dims, d >= n, |i, a, j, b| {
        let (s, t) = (bases[i][a], bases[j][b]);
        if s & t != 0 {
            return Vec::new();
        }
        vec![(
            index[i + j][&(s | t)] as u32,
            field.sign(exterior_sign(s, t)),
        )]
    })
    .expect("exterior structure constants are valid")
}

/// `S(F_p^n) = F_p[x_0..x_{n-1}]` stored through degree `d`.
pub fn symmetric_algebra(n: usize, field: PrimeField, d: usize) -> GradedAlgebra {
    if n == 0 {
        return GradedAlgebra::trivial(field);
    }
    let bases: Vec<Vec<Vec<u8>>> = (0..=d).map(|k| multisets(n, k)).collect();
    let index: Vec<HashMap<&[u8], usize>> = bases
        .iter()
        .map(|b| {
            b.iter()
                .enumerate()
                .map(|(i, m)| (m.as_slice(), i))
                .collect()
        })
        .collect();
    let dims = bases.iter().map(Vec::len).collect();
    GradedAlgebra::from_fn_unchecked(field, dims, false, |i, a, j, b| {
        let mut m = bases[i][a].clone();
        m.extend_from_slice(&bases[j][b]);
        m.sort_unstable();
        vec![(index[i + j][m.as_slice()] as u32, 1)]
    })
    .expect("symmetric structure constants are valid")
}

/// `A_{≥k}` as a right module over `A`, with the components below `k` zero.
pub fn truncation_module(algebra: Arc<GradedAlgebra>, k: usize) -> GradedModule {
    let dims = (0..=algebra.top())
        .map(|i| if i < k { 0 } else { algebra.dim(i) })
        .collect();
    let complete = algebra.is_complete();
    let a = algebra.clone();
    GradedModule::from_fn(algebra, 0, dims, complete, |j, m, i, b| {
        a.product(j as usize, m, i, b).to_vec()
    })
    .expect("truncation of an algebra is a module")
}

/// The free module `A(-1) ⊗ A_1`: degree `i` is `A_{i-1} ⊗ A_1` with basis
/// pairs `(f, x)` at index `f * dim A_1 + x`, and `A` acting on the left factor.
pub fn linear_syzygy_ambient(algebra: Arc<GradedAlgebra>) -> GradedModule {
    let n = algebra.dim(1);
    let dims = (0..=algebra.top())
        .map(|i| if i == 0 { 0 } else { algebra.dim(i - 1) * n })
        .collect();
    let complete = algebra.is_complete();
    let a = algebra.clone();
    GradedModule::from_fn_unchecked(algebra, 0, dims, complete, |j, m, i, b| {
        let (f, x) = (m / n, m % n);
        a.product(j as usize - 1, f, i, b)
            .iter()
            .map(|&(g, c)| (g * n as u32 + x as u32, c))
            .collect()
    })
    .expect("free module structure constants are valid")
}

/// The multiplication map `A_{i-1} ⊗ A_1 → A_i` in the basis of
/// [`linear_syzygy_ambient`].
pub fn linear_multiplication(algebra: &GradedAlgebra, i: usize) -> FpMatrix {
    let n = algebra.dim(1);
    let cols: Vec<SparseVec> = (0..algebra.dim(i - 1) * n)
        .map(|k| algebra.product(i - 1, k / n, 1, k % n).to_vec())
        .collect();
    FpMatrix::from_sparse_columns(algebra.field(), algebra.dim(i), &cols)
}

/// `J = ker(A_{•-1} ⊗ A_1 → A_•)` for a commutative algebra `A` (typically
/// `S(V*)`), as a submodule of [`linear_syzygy_ambient`].
pub fn syzygy_submodule(ambient: &GradedModule) -> Result<Submodule> {
    let a = ambient.algebra();
    let spaces = (0..=ambient.top())
        .map(|i| {
            if i == 0 {
                Subspace::zero(a.field(), 0)
            } else {
                linear_multiplication(a, i as usize).kernel_basis()
            }
        })
        .collect();
    Submodule::from_spaces(ambient, spaces)
}

/// `J` as a module over `A`.
pub fn syzygy_module_j(algebra: Arc<GradedAlgebra>) -> Result<GradedModule> {
    let ambient = linear_syzygy_ambient(algebra);
    syzygy_submodule(&ambient)?.to_module(&ambient)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn exterior_dims_and_antisymmetry() {
        let a = exterior_algebra(3, f(5), 6);
        assert_eq!(a.hilbert_function(), vec![1, 3, 3, 1]);
        assert!(a.is_complete());
        assert_eq!(a.product(1, 0, 1, 1), &[(0, 1)]);
        assert_eq!(a.product(1, 1, 1, 0), &[(0, 4)]);
        assert!(a.product(1, 2, 1, 2).is_empty());
    }

    #[test]
    fn exterior_is_associative_and_graded_commutative() {
        for p in [2, 3] {
            for n in 0..=4 {
                let a = exterior_algebra(n, f(p), n);
                let field = f(p);
                GradedAlgebra::from_fn(field, a.hilbert_function(), true, |i, x, j, y| {
                    a.product(i, x, j, y).to_vec()
                })
                .unwrap();
                for i in 0..=n {
                    for j in 0..=n - i {
                        for x in 0..a.dim(i) {
                            for y in 0..a.dim(j) {
                                let ab = a.product(i, x, j, y);
                                let s = field.sign(i * j);
                                let ba: Vec<_> = a
                                    .product(j, y, i, x)
                                    .iter()
                                    .map(|&(k, c)| (k, field.mul(s, c)))
                                    .collect();
                                assert_eq!(ab, ba.as_slice());
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sign_reciprocity() {
        for s in 0u64..32 {
            for t in 0u64..32 {
                if s & t == 0 {
                    let parity = (s.count_ones() * t.count_ones()) as usize % 2;
                    assert_eq!((exterior_sign(s, t) + exterior_sign(t, s)) % 2, parity);
                }
            }
        }
    }

    #[test]
    fn symmetric_dims() {
        let s = symmetric_algebra(2, f(3), 3);
        assert_eq!(s.hilbert_function(), vec![1, 2, 3, 4]);
        assert_eq!(s.product(1, 0, 1, 1), s.product(1, 1, 1, 0));
        assert_eq!(
            symmetric_algebra(2, f(3), 4).hilbert_function(),
            vec![1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn truncations() {
        let a = Arc::new(exterior_algebra(3, f(3), 3));
        let l1 = truncation_module(a.clone(), 1);
        assert_eq!(l1.hilbert_function(), vec![0, 3, 3, 1]);
        assert_eq!(l1.lowest_degree(), Some(1));
        let l0 = truncation_module(a.clone(), 0);
        assert_eq!(l0.hilbert_function(), a.hilbert_function());
    }

    #[test]
    fn syzygy_dims() {
        for n in 1..=4 {
            let s = Arc::new(symmetric_algebra(n, f(2), 5));
            let j = syzygy_module_j(s.clone()).unwrap();
            let dims = j.hilbert_function();
            assert_eq!(dims[0], 0);
            assert_eq!(dims[1], 0);
            for i in 2..=5 {
                assert_eq!(linear_multiplication(&s, i).rank(), s.dim(i));
                assert_eq!(
                    dims[i],
                    n * binomial(n + i - 2, i - 1) - binomial(n + i - 1, i),
                    "n={n} i={i}"
                );
            }
        }
        let s = Arc::new(symmetric_algebra(2, f(5), 3));
        assert_eq!(syzygy_module_j(s).unwrap().dim(2), 1);
    }
}
