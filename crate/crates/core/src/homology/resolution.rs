//! Minimal free resolutions of right modules, degree by degree.
//!
//! In internal degree `t` and homological degree `s`, the new generators of
//! `F_s` are chosen as a complement of `d_s((F_s)_t)` (built from the
//! generators of lower degree) inside `ker(d_{s-1})_t`. Their number is
//! `dim Tor_s(M, k)_t = dim H_{s,t}(A, M)`.

use crate::error::Result;
use crate::fplinalg::{sparse, FpMatrix, SparseVec, Subspace};
use crate::graded::{GradedAlgebra, GradedModule};

pub struct MinimalResolution {
    low: i32,
    t_max: i32,
    // degrees of the generators of each F_s, ascending
    degrees: Vec<Vec<i32>>,
}

struct FreeStage {
    degrees: Vec<i32>,
    // image of each generator, dense in the target component of its degree
    images: Vec<Vec<u32>>,
}

impl FreeStage {
    /// Offsets of the generator blocks in degree `t` and the total dimension.
    fn layout(&self, a: &GradedAlgebra, t: i32) -> (Vec<usize>, usize) {
        let mut offsets = Vec::new();
        let mut total = 0;
        for &d in self.degrees.iter().take_while(|&&d| d <= t) {
            offsets.push(total);
            total += a.dim((t - d) as usize);
        }
        (offsets, total)
    }
}

impl MinimalResolution {
    /// Resolves `m` through homological degree `s_max` and internal degrees
    /// `low..=t_max`, where `low` bounds the nonzero degrees of `m` from below.
    /// The caller guarantees that `m` is known through `t_max` and the algebra
    /// through `t_max - low`.
    pub fn compute(
        a: &GradedAlgebra,
        m: &GradedModule,
        low: i32,
        s_max: usize,
        t_max: i32,
    ) -> Result<Self> {
        let f = a.field();
        let mut stages: Vec<FreeStage> = (0..=s_max)
            .map(|_| FreeStage {
                degrees: Vec::new(),
                images: Vec::new(),
            })
            .collect();
        for t in low..=t_max {
            // columns of the previous differential in degree t, with row count
            let mut prev: Option<(Vec<SparseVec>, usize)> = None;
            for s in 0..=s_max {
                let rows = if s == 0 {
                    m.dim(t)
                } else {
                    stages[s - 1].layout(a, t).1
                };
                let mut cols: Vec<SparseVec> = Vec::new();
                let stage = &stages[s];
                for (k, &d) in stage.degrees.iter().enumerate() {
                    if d >= t {
                        break;
                    }
                    let i = (t - d) as usize;
                    for x in 0..a.dim(i) {
                        let mut acc = vec![0u32; rows];
                        if s == 0 {
                            for (y, &c) in stage.images[k].iter().enumerate() {
                                if c != 0 {
                                    sparse::axpy(f, &mut acc, c, m.act(d, y, i, x));
                                }
                            }
                        } else {
                            let below = &stages[s - 1];
                            let (src_off, _) = below.layout(a, d);
                            let (dst_off, _) = below.layout(a, t);
                            for (idx, &c) in stage.images[k].iter().enumerate() {
                                if c == 0 {
                                    continue;
                                }
                                let h = src_off.partition_point(|&o| o <= idx) - 1;
                                let e = (d - below.degrees[h]) as usize;
                                let b = idx - src_off[h];
                                for &(z, v) in a.product(e, b, i, x) {
                                    let slot = &mut acc[dst_off[h] + z as usize];
                                    *slot = f.mul_add(c, v, *slot);
                                }
                            }
                        }
                        cols.push(sparse::from_dense(&acc));
                    }
                }
                let kernel = match &prev {
                    None => Subspace::full(f, rows),
                    Some((pcols, prows)) => {
                        FpMatrix::from_sparse_columns(f, *prows, pcols).kernel_basis()
                    }
                };
                let mut span = Subspace::from_spanning(&FpMatrix::from_sparse_rows(f, rows, &cols));
                let mut fresh = Vec::new();
                for v in kernel.vectors() {
                    if !span.contains(v) {
                        let one = FpMatrix::from_raw(f, 1, rows, v.to_vec());
                        span = span.sum(&Subspace::from_spanning(&one))?;
                        fresh.push(v.to_vec());
                    }
                }
                for v in fresh {
                    cols.push(sparse::from_dense(&v));
                    stages[s].degrees.push(t);
                    stages[s].images.push(v);
                }
                prev = Some((cols, rows));
            }
        }
        Ok(Self {
            low,
            t_max,
            degrees: stages.into_iter().map(|s| s.degrees).collect(),
        })
    }

    pub fn s_max(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn t_max(&self) -> i32 {
        self.t_max
    }

    pub fn low(&self) -> i32 {
        self.low
    }

    /// Number of generators of `F_s` in degree `t`.
    pub fn betti(&self, s: usize, t: i32) -> usize {
        assert!(
            s <= self.s_max() && t <= self.t_max,
            "outside the computed range"
        );
        self.degrees[s].iter().filter(|&&d| d == t).count()
    }
}
