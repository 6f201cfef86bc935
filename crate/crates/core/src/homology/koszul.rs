//! `Tor^S(N, k)` over a polynomial ring `S` through the Koszul complex
//! `N ⊗ Λ(V)`, `d(n⊗e_T) = Σ_r (-1)^r (n·x_{t_r}) ⊗ e_{T∖t_r}` with
//! `T = {t_0 < t_1 < …}`.

use std::collections::HashMap;

use super::bar::check_square_zero;
use crate::error::{Error, Result};
use crate::fplinalg::{sparse, SparseVec};
use crate::graded::{GradedAlgebra, GradedModule};
use crate::monomial::{subsets, symmetric_algebra};

fn check_symmetric(s: &GradedAlgebra) -> Result<usize> {
    if s.top() == 0 {
        return Err(Error::AlgebraNotSymmetric);
    }
    let n = s.dim(1);
    if *s != symmetric_algebra(n, s.field(), s.top()) {
        return Err(Error::AlgebraNotSymmetric);
    }
    Ok(n)
}

/// Columns of `d_i` in internal degree `j`, from `N_{j-i} ⊗ Λ^i` to
/// `N_{j-i+1} ⊗ Λ^{i-1}`, basis pairs `(x, T)` with `x` major.
fn differential(nmod: &GradedModule, vars: usize, i: usize, j: i32) -> Vec<SparseVec> {
    let f = nmod.field();
    let src = subsets(vars, i);
    let dst = subsets(vars, i - 1);
    let dst_index: HashMap<u64, usize> = dst.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let deg = j - i as i32;
    let mut cols = Vec::with_capacity(nmod.dim(deg) * src.len());
    for x in 0..nmod.dim(deg) {
        for &t in &src {
            let mut col: SparseVec = Vec::new();
            let mut rest = t;
            let mut r = 0;
            while rest != 0 {
                let var = rest.trailing_zeros() as usize;
                let sign = f.sign(r);
                let pos = dst_index[&(t & !(1 << var))];
                for &(y, c) in nmod.act(deg, x, 1, var) {
                    col.push((y * dst.len() as u32 + pos as u32, f.mul(sign, c)));
                }
                rest &= rest - 1;
                r += 1;
            }
            col.sort_unstable_by_key(|e| e.0);
            cols.push(col);
        }
    }
    cols
}

/// `dim Tor_i^S(N, k)_j`. Needs `N` through degree `j - i + 1` (`j` when `i = 0`).
pub fn koszul_complex_tor(
    s: &GradedAlgebra,
    nmod: &GradedModule,
    i: usize,
    j: i32,
) -> Result<usize> {
    if !nmod.is_over(s) {
        return Err(Error::AlgebraMismatch);
    }
    let vars = check_symmetric(s)?;
    if i > vars {
        return Ok(0);
    }
    let deg = j - i as i32;
    let needed = if i == 0 { j } else { deg + 1 };
    if deg < nmod.start() {
        return Ok(0);
    }
    if !nmod.known(needed) || !nmod.known(deg) {
        return Err(Error::TruncationInsufficient { i, j });
    }
    let width = crate::monomial::binomial(vars, i);
    let dim = nmod.dim(deg) * width;
    if dim == 0 {
        return Ok(0);
    }
    let f = s.field();
    let down = if i == 0 {
        Vec::new()
    } else {
        differential(nmod, vars, i, j)
    };
    let up = if i < vars && deg - 1 >= nmod.start() {
        differential(nmod, vars, i + 1, j)
    } else {
        Vec::new()
    };
    if i > 0 && !up.is_empty() {
        let rows = nmod.dim(deg + 1) * crate::monomial::binomial(vars, i - 1);
        check_square_zero(f, &down, &up, rows)?;
    }
    Ok(dim - sparse::rank_of_rows(f, down) - sparse::rank_of_rows(f, up))
}
