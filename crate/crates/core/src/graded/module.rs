use std::sync::Arc;

use super::algebra::{normalize, GradedAlgebra};
use crate::error::{Error, Result};
use crate::fplinalg::{sparse, FpMatrix, PrimeField, SparseVec};

/// A graded right module over a [`GradedAlgebra`], known in degrees
/// `start..=top`. Components below `start` are zero; above `top` they are
/// zero when `complete` is set and unknown otherwise.
#[derive(Clone)]
pub struct GradedModule {
    algebra: Arc<GradedAlgebra>,
    start: i32,
    dims: Vec<usize>,
    complete: bool,
    // action[j - start][i][m * dim A_i + a] = m · a in M_{j+i}
    action: Vec<Vec<Vec<SparseVec>>>,
}

impl GradedModule {
    /// Builds a module from an action callback `f(j, m, i, a)` returning `m · a`
    /// in `M_{j+i}` for `i >= 1`. The unit acts as the identity. The known range
    /// is clipped so every stored action is determined by the algebra; the
    /// identity `(m · a) · b = m · (ab)` is verified.
    pub fn from_fn<F>(
        algebra: Arc<GradedAlgebra>,
        start: i32,
        dims: Vec<usize>,
        complete: bool,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(i32, usize, usize, usize) -> SparseVec,
    {
        let m = Self::from_fn_unchecked(algebra, start, dims, complete, f)?;
        m.check_associative()?;
        Ok(m)
    }

    pub(crate) fn from_fn_unchecked<F>(
        algebra: Arc<GradedAlgebra>,
        start: i32,
        mut dims: Vec<usize>,
        mut complete: bool,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(i32, usize, usize, usize) -> SparseVec,
    {
        if !algebra.is_complete() && dims.len() > algebra.top() + 1 {
            let dropped = dims.split_off(algebra.top() + 1);
            complete &= dropped.iter().all(|&d| d == 0);
        }
        let field = algebra.field();
        let len = dims.len();
        let mut action = Vec::with_capacity(len);
        for jr in 0..len {
            let mut per_degree = Vec::with_capacity(len - jr);
            for i in 0..len - jr {
                let da = algebra.dim(i);
                let mut cols = Vec::with_capacity(dims[jr] * da);
                for m in 0..dims[jr] {
                    for a in 0..da {
                        cols.push(if i == 0 {
                            vec![(m as u32, 1)]
                        } else {
                            normalize(field, f(start + jr as i32, m, i, a), dims[jr + i])?
                        });
                    }
                }
                per_degree.push(cols);
            }
            action.push(per_degree);
        }
        Ok(Self {
            algebra,
            start,
            dims,
            complete,
            action,
        })
    }

    /// The algebra as a right module over itself.
    pub fn regular(algebra: Arc<GradedAlgebra>) -> Self {
        let dims = algebra.hilbert_function();
        let complete = algebra.is_complete();
        let a = algebra.clone();
        Self::from_fn_unchecked(algebra, 0, dims, complete, |j, m, i, b| {
            a.product(j as usize, m, i, b).to_vec()
        })
        .unwrap()
    }

    /// The residue field `k = A / A_+`, concentrated in degree 0.
    pub fn trivial(algebra: Arc<GradedAlgebra>) -> Self {
        Self::from_fn_unchecked(algebra, 0, vec![1], true, |_, _, _, _| Vec::new()).unwrap()
    }

    pub fn zero(algebra: Arc<GradedAlgebra>) -> Self {
        Self::from_fn_unchecked(algebra, 0, Vec::new(), true, |_, _, _, _| Vec::new()).unwrap()
    }

    pub fn algebra(&self) -> &Arc<GradedAlgebra> {
        &self.algebra
    }

    pub fn is_over(&self, a: &GradedAlgebra) -> bool {
        std::ptr::eq(self.algebra.as_ref(), a) || *self.algebra == *a
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.algebra.field()
    }

    /// Lowest stored degree (components below it vanish).
    #[inline]
    pub fn start(&self) -> i32 {
        self.start
    }

    /// Highest stored degree; `start - 1` for an empty store.
    #[inline]
    pub fn top(&self) -> i32 {
        self.start + self.dims.len() as i32 - 1
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    #[inline]
    pub fn known(&self, k: i32) -> bool {
        self.complete || k <= self.top()
    }

    /// The first degree with a nonzero component, if any is stored.
    pub fn lowest_degree(&self) -> Option<i32> {
        self.dims
            .iter()
            .position(|&d| d > 0)
            .map(|k| self.start + k as i32)
    }

    pub fn is_zero(&self) -> bool {
        self.complete && self.lowest_degree().is_none()
    }

    #[inline]
    pub fn dim(&self, k: i32) -> usize {
        if k < self.start {
            return 0;
        }
        match self.dims.get((k - self.start) as usize) {
            Some(&d) => d,
            None if self.complete => 0,
            None => panic!("module degree {k} beyond truncation {}", self.top()),
        }
    }

    /// Dimensions over `start..=top`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.dims.clone()
    }

    /// `m · a` for basis elements `m` of `M_j` and `a` of `A_i`.
    #[inline]
    pub fn act(&self, j: i32, m: usize, i: usize, a: usize) -> &[(u32, u32)] {
        if j < self.start {
            return &[];
        }
        let jr = (j - self.start) as usize;
        match self.action.get(jr).and_then(|row| row.get(i)) {
            Some(cols) => &cols[m * self.algebra.dim(i) + a],
            None => {
                assert!(
                    self.complete,
                    "action into degree {} beyond truncation",
                    j + i as i32
                );
                &[]
            }
        }
    }

    /// `x · y` for `x` in `M_j` and `y` in `A_i`, both in coordinates.
    pub fn act_vec(&self, j: i32, x: &[u32], i: usize, y: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut out = vec![0; self.dim(j + i as i32)];
        for (m, &xm) in x.iter().enumerate() {
            if xm == 0 {
                continue;
            }
            for (a, &ya) in y.iter().enumerate() {
                if ya != 0 {
                    sparse::axpy(f, &mut out, f.mul(xm, ya), self.act(j, m, i, a));
                }
            }
        }
        out
    }

    /// The action map `M_j ⊗ A_i → M_{j+i}` as a matrix.
    pub fn action_matrix(&self, j: i32, i: usize) -> FpMatrix {
        let da = self.algebra.dim(i);
        let cols: Vec<SparseVec> = (0..self.dim(j) * da)
            .map(|k| self.act(j, k / da, i, k % da).to_vec())
            .collect();
        FpMatrix::from_sparse_columns(self.field(), self.dim(j + i as i32), &cols)
    }

    /// Image of `M_{k-1} ⊗ A_1 + ... + M_{start} ⊗ A_{k-start}` inside `M_k`,
    /// as a spanning matrix whose rows are vectors of `M_k`.
    pub fn decomposables(&self, k: i32) -> FpMatrix {
        let n = self.dim(k);
        let mut rows: Vec<SparseVec> = Vec::new();
        for j in self.start..k {
            let i = (k - j) as usize;
            for m in 0..self.dim(j) {
                for a in 0..self.algebra.dim(i) {
                    let v = self.act(j, m, i, a);
                    if !v.is_empty() {
                        rows.push(v.to_vec());
                    }
                }
            }
        }
        FpMatrix::from_sparse_rows(self.field(), n, &rows)
    }

    fn check_associative(&self) -> Result<()> {
        let f = self.field();
        let a = &self.algebra;
        for (jr, &dj) in self.dims.iter().enumerate() {
            let j = self.start + jr as i32;
            let room = self.dims.len() - 1 - jr;
            for i in 1..=room {
                for k in 1..=room - i {
                    let n = self.dim(j + (i + k) as i32);
                    for m in 0..dj {
                        for x in 0..a.dim(i) {
                            let mx = self.act(j, m, i, x);
                            for y in 0..a.dim(k) {
                                let mut lhs = vec![0; n];
                                for &(u, s) in mx {
                                    sparse::axpy(
                                        f,
                                        &mut lhs,
                                        s,
                                        self.act(j + i as i32, u as usize, k, y),
                                    );
                                }
                                let mut rhs = vec![0; n];
                                for &(u, s) in a.product(i, x, k, y) {
                                    sparse::axpy(f, &mut rhs, s, self.act(j, m, i + k, u as usize));
                                }
                                if lhs != rhs {
                                    return Err(Error::InvalidStructure(format!(
                                        "action is not associative at degrees ({j}, {i}, {k})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GradedModule {{ start: {}, dims: {:?}{} }}",
            self.start,
            self.dims,
            if self.complete { "" } else { ", truncated" }
        )
    }
}
