//! Cohomology algebras of elementary-type pro-p groups, the surjection
//! `ψ: Λ(H¹) → H•(G)` and its kernel.

mod expr;

use std::sync::Arc;

pub use expr::GroupExpr;

use crate::criteria::{koszul_check, KoszulReport};
use crate::error::{Error, Result};
use crate::fplinalg::{FpMatrix, PrimeField, SparseVec, Subspace};
use crate::graded::{
    direct_sum, free_product_algebra, shift, tensor_algebra, tensor_module, tensor_module_over,
    GradedAlgebra, GradedModule, Submodule,
};
use crate::monomial::{exterior_algebra, subsets, symmetric_algebra};
use crate::quadratic::ideal_in_exterior;

/// Gram matrix of the chain pairing: `G[i][i+1] = 1`, `G[i+1][i] = -1`.
pub fn demushkin_gram(d: usize, field: PrimeField) -> FpMatrix {
    let mut g = FpMatrix::zeros(field, d, d);
    for i in 0..d.saturating_sub(1) {
        g.set(i, i + 1, 1);
        g.set(i + 1, i, field.neg(1));
    }
    g
}

/// The kernel of the cup-product functional `Λ²(F_p^d) → F_p`, `e_a∧e_b ↦ G[a][b]`.
pub fn demushkin_relations(d: usize, field: PrimeField) -> Result<Subspace> {
    if d % 2 == 1 {
        return Err(Error::OddDemushkinRank(d));
    }
    let g = demushkin_gram(d, field);
    let pairs = subsets(d, 2);
    let row: Vec<u32> = pairs
        .iter()
        .map(|&s| g.get(s.trailing_zeros() as usize, 63 - s.leading_zeros() as usize))
        .collect();
    Ok(FpMatrix::from_vec(field, 1, pairs.len(), row)?.kernel_basis())
}

/// `H•(G, F_p)` through degree `d`.
pub fn cohomology_algebra(e: &GroupExpr, field: PrimeField, d: usize) -> Result<GradedAlgebra> {
    let out = match e {
        GroupExpr::Zp => exterior_algebra(1, field, d),
        GroupExpr::Free(n) => {
            let dims = if d == 0 { vec![1] } else { vec![1, *n] };
            GradedAlgebra::from_fn(field, dims, true, |_, _, _, _| Vec::new())?
        }
        GroupExpr::Demushkin(n) => {
            let rel = demushkin_relations(*n, field)?;
            let lambda = Arc::new(exterior_algebra(*n, field, d));
            ideal_in_exterior(lambda, &rel)?.quotient
        }
        GroupExpr::FreeProduct(a, b) => free_product_algebra(
            &cohomology_algebra(a, field, d)?,
            &cohomology_algebra(b, field, d)?,
        )?,
        GroupExpr::Semidirect(m, g) => tensor_algebra(
            &cohomology_algebra(g, field, d)?,
            &exterior_algebra(*m, field, d),
        )?,
        GroupExpr::Product(a, b) => tensor_algebra(
            &cohomology_algebra(a, field, d)?,
            &cohomology_algebra(b, field, d)?,
        )?,
    };
    Ok(out.truncate(d).sealed())
}

/// `ψ: Λ(H¹) → H•(G)` in degrees `0..=top`, its kernel, and `H•(G)` as a
/// `Λ`-module (the quotient by the kernel).
#[derive(Clone, Debug)]
pub struct PsiData {
    pub lambda: Arc<GradedAlgebra>,
    pub cohomology: GradedAlgebra,
    /// `psi[k]` has shape `dim H^k x dim Λ^k`.
    pub psi: Vec<FpMatrix>,
    pub kernel: Submodule,
    pub kernel_module: GradedModule,
    pub cohomology_module: GradedModule,
}

/// The algebra map extending the identity on degree 1, `ψ(e_S) = b_{s1}···b_{sk}`.
pub fn psi_for_algebra(b: GradedAlgebra) -> Result<PsiData> {
    let field = b.field();
    if let Some(k) = b.first_degree_not_generated() {
        return Err(Error::NotDegreeOneGenerated(k));
    }
    let n = if b.known(1) { b.dim(1) } else { 0 };
    let top = if b.is_complete() { n } else { b.top() };
    let lambda = Arc::new(exterior_algebra(n, field, top));
    let mut psi: Vec<FpMatrix> = Vec::new();
    let mut images: Vec<Vec<Vec<u32>>> = vec![vec![vec![1]]];
    for k in 1..=lambda.top() {
        let basis = subsets(n, k);
        let prev = subsets(n, k - 1);
        let col: Vec<Vec<u32>> = basis
            .iter()
            .map(|&s| {
                let last = 63 - s.leading_zeros() as usize;
                let rest = prev.iter().position(|&t| t == s & !(1 << last)).unwrap();
                let mut gen = vec![0; n];
                gen[last] = 1;
                b.multiply(k - 1, &images[k - 1][rest], 1, &gen)
            })
            .collect();
        images.push(col);
    }
    for (k, cols) in images.iter().enumerate() {
        let sparse_cols: Vec<SparseVec> = cols
            .iter()
            .map(|c| crate::fplinalg::sparse::from_dense(c))
            .collect();
        let m = FpMatrix::from_sparse_columns(field, b.dim(k), &sparse_cols);
        if m.rank() < b.dim(k) {
            return Err(Error::NotDegreeOneGenerated(k));
        }
        psi.push(m);
    }
    let regular = GradedModule::regular(lambda.clone());
    let spaces = psi.iter().map(FpMatrix::kernel_basis).collect();
    let kernel = Submodule::from_spaces(&regular, spaces)?;
    let kernel_module = kernel.to_module(&regular)?;
    let cohomology_module = kernel.quotient(&regular)?;
    Ok(PsiData {
        lambda,
        cohomology: b,
        psi,
        kernel,
        kernel_module,
        cohomology_module,
    })
}

pub fn psi_and_kernel(e: &GroupExpr, field: PrimeField, d: usize) -> Result<PsiData> {
    psi_for_algebra(cohomology_algebra(e, field, d)?)
}

/// For `G = F(a) x F(b)` with `a, b >= 2`: `B = H•(G)` and
/// `N = H•(G^ab, H¹(G'))`, both over `Λ(H¹(G)) = Λ(F_p^a) ⊗⁻¹ Λ(F_p^b)`.
///
/// `H•(Z_p^a, H¹(F_a'))` is `F_p` in degree 0 for `a = 2`; only that case is
/// built, so both ranks must be 2.
pub fn free_square_modules(field: PrimeField) -> Result<(GradedModule, GradedModule)> {
    let factor = psi_and_kernel(&GroupExpr::Free(2), field, 2)?;
    let b = tensor_module(&factor.cohomology_module, &factor.cohomology_module)?;
    let ab = b.algebra().clone();
    let regular = GradedModule::regular(factor.lambda.clone());
    let trivial = GradedModule::trivial(factor.lambda.clone());
    let left = tensor_module_over(&regular, &trivial, ab.clone())?;
    let right = tensor_module_over(&trivial, &regular, ab)?;
    Ok((b, direct_sum(&left, &right)?))
}

/// `α_{i+1}: S^{i+1}(V*) → S^{i+2}(V*) ⊗ V*`,
/// `f ↦ Σ_a (x_a f)⊗x_{a+1} − (x_{a+1} f)⊗x_a`, in the basis pairs
/// `(monomial, variable)` with the monomial major.
pub fn demushkin_alpha(d: usize, field: PrimeField, i: usize) -> Result<FpMatrix> {
    if d % 2 == 1 {
        return Err(Error::OddDemushkinRank(d));
    }
    let s = symmetric_algebra(d, field, i + 2);
    let (src, dst) = (s.dim(i + 1), s.dim(i + 2));
    let mut m = FpMatrix::zeros(field, dst * d, src);
    for f in 0..src {
        for a in 0..d.saturating_sub(1) {
            for &(g, c) in s.product(1, a, i + 1, f) {
                let r = g as usize * d + a + 1;
                m.set(r, f, field.add(m.get(r, f), c));
            }
            for &(g, c) in s.product(1, a + 1, i + 1, f) {
                let r = g as usize * d + a;
                m.set(r, f, field.sub(m.get(r, f), c));
            }
        }
    }
    Ok(m)
}

/// Koszulity of `(ker ψ)(2)` over `Λ(H¹)` on the rectangle `(d, d)`.
pub fn verify_theorem_c(e: &GroupExpr, field: PrimeField, d: usize) -> Result<KoszulReport> {
    let data = psi_and_kernel(e, field, d + 2)?;
    let shifted = shift(&data.kernel_module, 2);
    koszul_check(&data.lambda, &shifted, d, d as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn basic_cohomology_dims() {
        let free: GroupExpr = "F(2)".parse().unwrap();
        assert_eq!(
            cohomology_algebra(&free, f(3), 4)
                .unwrap()
                .hilbert_function(),
            vec![1, 2]
        );
        let dem: GroupExpr = "D(4)".parse().unwrap();
        assert_eq!(
            cohomology_algebra(&dem, f(3), 4)
                .unwrap()
                .hilbert_function(),
            vec![1, 4, 1, 0]
        );
        let semi: GroupExpr = "(A(2) x Zp)".parse().unwrap();
        assert_eq!(
            cohomology_algebra(&semi, f(5), 4)
                .unwrap()
                .hilbert_function(),
            vec![1, 3, 3, 1]
        );
        assert_eq!(
            demushkin_relations(3, f(2)),
            Err(Error::OddDemushkinRank(3))
        );
    }

    #[test]
    fn psi_kernels() {
        let zp = psi_and_kernel(&GroupExpr::Zp, f(2), 3).unwrap();
        assert!(zp.kernel.dims().iter().all(|&d| d == 0));
        let free = psi_and_kernel(&GroupExpr::Free(2), f(2), 3).unwrap();
        assert_eq!(free.kernel.dims(), vec![0, 0, 1]);
        let dem = psi_and_kernel(&GroupExpr::Demushkin(4), f(3), 4).unwrap();
        assert_eq!(dem.kernel.dims(), vec![0, 0, 5, 4, 1]);
    }

    #[test]
    fn alpha_small_case() {
        let m = demushkin_alpha(2, f(5), 0).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 2));
        assert_eq!(m.rank(), 2);
        assert_eq!(demushkin_alpha(3, f(5), 0), Err(Error::OddDemushkinRank(3)));
    }
}
