use std::sync::Arc;

use super::algebra::GradedAlgebra;
use super::module::GradedModule;
use crate::error::{Error, Result};
use crate::fplinalg::{sparse, FpMatrix, PrimeField, SparseVec, Subspace};

fn check_fields(a: PrimeField, b: PrimeField) -> Result<()> {
    if a != b {
        return Err(Error::FieldMismatch(a.p(), b.p()));
    }
    Ok(())
}

/// Known range of a graded tensor product or sum whose factors start at
/// `s1`, `s2`: the highest degree determined by the stored data, and whether
/// the result vanishes above it.
fn combined_top(t1: i32, c1: bool, s1: i32, t2: i32, c2: bool, s2: i32) -> (i32, bool) {
    match (c1, c2) {
        (true, true) => (t1.max(s1 - 1) + t2.max(s2 - 1), true),
        (true, false) => (t2 + s1, false),
        (false, true) => (t1 + s2, false),
        (false, false) => ((t1 + s2).min(t2 + s1), false),
    }
}

/// `M(k)`: the component in degree `i` is `M_{i+k}`.
pub fn shift(m: &GradedModule, k: i32) -> GradedModule {
    let start = m.start() - k;
    let src = m.clone();
    GradedModule::from_fn_unchecked(
        m.algebra().clone(),
        start,
        m.hilbert_function(),
        m.is_complete(),
        |j, x, i, a| src.act(j + k, x, i, a).to_vec(),
    )
    .unwrap()
}

/// Offsets of the blocks `X_u ⊗ Y_{n-u}` inside degree `n`, with `u` running
/// downward. Returns `(u, offset)` pairs and the total dimension.
fn tensor_blocks(
    n: i32,
    xs: (i32, i32, &dyn Fn(i32) -> usize),
    ys: (i32, &dyn Fn(i32) -> usize),
) -> (Vec<(i32, usize)>, usize) {
    let (x_start, x_top, dx) = xs;
    let (y_start, dy) = ys;
    let mut blocks = Vec::new();
    let mut off = 0;
    let mut u = (n - y_start).min(x_top);
    while u >= x_start {
        blocks.push((u, off));
        off += dx(u) * dy(n - u);
        u -= 1;
    }
    (blocks, off)
}

fn block_offset(blocks: &[(i32, usize)], u: i32) -> usize {
    blocks.iter().find(|b| b.0 == u).map(|b| b.1).unwrap()
}

/// The signed tensor product `A ⊗⁻¹ B` with
/// `(a1⊗b1)(a2⊗b2) = (-1)^{|b1||a2|} a1a2 ⊗ b1b2`.
///
/// Degree `n` is the direct sum of `A_i ⊗ B_{n-i}` for `i` descending, each
/// block ordered with the `A` index major.
pub fn tensor_algebra(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    check_fields(a.field(), b.field())?;
    let (top, complete) = combined_top(
        a.top() as i32,
        a.is_complete(),
        0,
        b.top() as i32,
        b.is_complete(),
        0,
    );
    let da = |k: i32| a.dim(k as usize);
    let db = |k: i32| b.dim(k as usize);
    let layout: Vec<_> = (0..=top)
        .map(|n| tensor_blocks(n, (0, a.top() as i32, &da), (0, &db)))
        .collect();
    let dims = layout.iter().map(|l| l.1).collect();
    let locate = |n: usize, idx: usize| -> (usize, usize, usize, usize) {
        // (deg a, index a, deg b, index b)
        let blocks = &layout[n].0;
        let pos = blocks
            .iter()
            .rposition(|&(_, off)| off <= idx)
            .expect("index inside a block");
        let (u, off) = blocks[pos];
        let (u, w) = (u as usize, n - u as usize);
        let r = idx - off;
        (u, r / b.dim(w), w, r % b.dim(w))
    };
    let f = a.field();
    let out = GradedAlgebra::from_fn_unchecked(f, dims, complete, |n1, x, n2, y| {
        let (i1, a1, j1, b1) = locate(n1, x);
        let (i2, a2, j2, b2) = locate(n2, y);
        let pa = a.product(i1, a1, i2, a2);
        let pb = b.product(j1, b1, j2, b2);
        if pa.is_empty() || pb.is_empty() {
            return Vec::new();
        }
        let sign = f.sign(j1 * i2);
        let off = block_offset(&layout[n1 + n2].0, (i1 + i2) as i32);
        let width = b.dim(j1 + j2);
        let mut v = Vec::with_capacity(pa.len() * pb.len());
        for &(u, s) in pa {
            for &(w, t) in pb {
                v.push((
                    (off + u as usize * width + w as usize) as u32,
                    f.mul(sign, f.mul(s, t)),
                ));
            }
        }
        v
    })?;
    Ok(out)
}

/// `M ⊗⁻¹ N` as a module over `A ⊗⁻¹ B`, with
/// `(m⊗n)(a⊗b) = (-1)^{|n||a|} ma ⊗ nb`.
pub fn tensor_module(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    check_fields(m.field(), n.field())?;
    let ab = Arc::new(tensor_algebra(m.algebra(), n.algebra())?);
    tensor_module_over(m, n, ab)
}

/// As [`tensor_module`], over an already built `A ⊗⁻¹ B`.
pub fn tensor_module_over(
    m: &GradedModule,
    n: &GradedModule,
    ab: Arc<GradedAlgebra>,
) -> Result<GradedModule> {
    check_fields(m.field(), n.field())?;
    let (a, b) = (m.algebra(), n.algebra());
    let (sm, sn) = (m.start(), n.start());
    let (top, complete) = combined_top(m.top(), m.is_complete(), sm, n.top(), n.is_complete(), sn);
    let dm = |k: i32| m.dim(k);
    let dn = |k: i32| n.dim(k);
    let layout: Vec<_> = (sm + sn..=top)
        .map(|k| tensor_blocks(k, (sm, m.top(), &dm), (sn, &dn)))
        .collect();
    let dims: Vec<usize> = layout.iter().map(|l| l.1).collect();
    let start = sm + sn;
    let a_layout: Vec<_> = (0..=ab.top())
        .map(|k| {
            let da = |d: i32| a.dim(d as usize);
            let db = |d: i32| b.dim(d as usize);
            tensor_blocks(k as i32, (0, a.top() as i32, &da), (0, &db)).0
        })
        .collect();
    let f = m.field();
    GradedModule::from_fn_unchecked(ab.clone(), start, dims, complete, |k, x, d, y| {
        let blocks = &layout[(k - start) as usize].0;
        let pos = blocks.iter().rposition(|&(_, off)| off <= x).unwrap();
        let (u, off) = blocks[pos];
        let w = k - u;
        let (m1, n1) = ((x - off) / n.dim(w), (x - off) % n.dim(w));
        let ablocks = &a_layout[d];
        let pos = ablocks.iter().rposition(|&(_, off)| off <= y).unwrap();
        let (i, aoff) = ablocks[pos];
        let (i, jb) = (i as usize, d - i as usize);
        let (a1, b1) = ((y - aoff) / b.dim(jb), (y - aoff) % b.dim(jb));
        let pm = m.act(u, m1, i, a1);
        let pn = n.act(w, n1, jb, b1);
        if pm.is_empty() || pn.is_empty() {
            return Vec::new();
        }
        let sign = f.sign(((w as i64) * (i as i64)).unsigned_abs() as usize);
        let target = &layout[(k + d as i32 - start) as usize].0;
        let off = block_offset(target, u + i as i32);
        let width = n.dim(w + jb as i32);
        let mut v = Vec::with_capacity(pm.len() * pn.len());
        for &(p, s) in pm {
            for &(q, t) in pn {
                v.push((
                    (off + p as usize * width + q as usize) as u32,
                    f.mul(sign, f.mul(s, t)),
                ));
            }
        }
        v
    })
}

/// `M ⊕ N` over a common algebra; in each degree the `M` coordinates come first.
pub fn direct_sum(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    if !m.is_over(n.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    let start = m.start().min(n.start());
    let top = match (m.is_complete(), n.is_complete()) {
        (true, true) => m.top().max(n.top()),
        (true, false) => n.top(),
        (false, true) => m.top(),
        (false, false) => m.top().min(n.top()),
    };
    let complete = m.is_complete() && n.is_complete();
    let dims = (start..=top).map(|k| m.dim(k) + n.dim(k)).collect();
    GradedModule::from_fn_unchecked(m.algebra().clone(), start, dims, complete, |j, x, i, a| {
        let dmj = m.dim(j);
        if x < dmj {
            m.act(j, x, i, a).to_vec()
        } else {
            let off = m.dim(j + i as i32) as u32;
            n.act(j, x - dmj, i, a)
                .iter()
                .map(|&(q, c)| (q + off, c))
                .collect()
        }
    })
}

/// The connected sum `k ⊕ A_+ ⊕ B_+` with `A_+ · B_+ = B_+ · A_+ = 0`.
/// In each positive degree the `A` coordinates come first.
pub fn free_product_algebra(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    check_fields(a.field(), b.field())?;
    let (top, complete) = match (a.is_complete(), b.is_complete()) {
        (true, true) => (a.top().max(b.top()), true),
        (true, false) => (b.top(), false),
        (false, true) => (a.top(), false),
        (false, false) => (a.top().min(b.top()), false),
    };
    let dims = (0..=top)
        .map(|k| if k == 0 { 1 } else { a.dim(k) + b.dim(k) })
        .collect();
    GradedAlgebra::from_fn_unchecked(a.field(), dims, complete, |i, x, j, y| {
        match (x < a.dim(i), y < a.dim(j)) {
            (true, true) => a.product(i, x, j, y).to_vec(),
            (false, false) => {
                let off = a.dim(i + j) as u32;
                b.product(i, x - a.dim(i), j, y - a.dim(j))
                    .iter()
                    .map(|&(q, c)| (q + off, c))
                    .collect()
            }
            _ => Vec::new(),
        }
    })
}

/// A graded subspace of a module closed under the action, one canonical
/// subspace per stored degree of the ambient module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    start: i32,
    spaces: Vec<Subspace>,
}

impl Submodule {
    /// The smallest submodule containing the given `(degree, vector)` pairs,
    /// computed up to the ambient truncation.
    pub fn generated_by(m: &GradedModule, gens: &[(i32, Vec<u32>)]) -> Result<Self> {
        let f = m.field();
        for (k, v) in gens {
            if *k < m.start() || *k > m.top() || v.len() != m.dim(*k) {
                return Err(Error::MalformedVector(format!(
                    "generator of length {} in degree {k}",
                    v.len()
                )));
            }
        }
        let mut spaces: Vec<Subspace> = Vec::new();
        for k in m.start()..=m.top() {
            let n = m.dim(k);
            let mut rows: Vec<u32> = Vec::new();
            for (d, v) in gens.iter().filter(|g| g.0 == k) {
                debug_assert_eq!(*d, k);
                rows.extend(v.iter().map(|&x| f.reduce(x)));
            }
            for (jr, s) in spaces.iter().enumerate() {
                let j = m.start() + jr as i32;
                let i = (k - j) as usize;
                for v in s.vectors() {
                    for a in 0..m.algebra().dim(i) {
                        let mut e = vec![0; m.algebra().dim(i)];
                        e[a] = 1;
                        rows.extend(m.act_vec(j, v, i, &e));
                    }
                }
            }
            let count = if n == 0 { 0 } else { rows.len() / n };
            spaces.push(Subspace::from_spanning(&FpMatrix::from_raw(
                f, count, n, rows,
            )));
        }
        Ok(Self {
            start: m.start(),
            spaces,
        })
    }

    /// Wraps per-degree subspaces after checking they are closed under the action.
    pub fn from_spaces(m: &GradedModule, spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.len() != m.hilbert_function().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} subspaces for {} module degrees",
                spaces.len(),
                m.hilbert_function().len()
            )));
        }
        for (jr, s) in spaces.iter().enumerate() {
            let j = m.start() + jr as i32;
            if s.ambient_dim() != m.dim(j) {
                return Err(Error::DimensionMismatch(format!("subspace in degree {j}")));
            }
        }
        let sub = Self {
            start: m.start(),
            spaces,
        };
        sub.check_closed(m)?;
        Ok(sub)
    }

    fn check_closed(&self, m: &GradedModule) -> Result<()> {
        for (jr, s) in self.spaces.iter().enumerate() {
            let j = self.start + jr as i32;
            for i in 1..self.spaces.len() - jr {
                let target = &self.spaces[jr + i];
                for v in s.vectors() {
                    for a in 0..m.algebra().dim(i) {
                        let mut e = vec![0; m.algebra().dim(i)];
                        e[a] = 1;
                        if !target.contains(&m.act_vec(j, v, i, &e)) {
                            return Err(Error::NotActionClosed {
                                degree: j + i as i32,
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn space(&self, k: i32) -> Option<&Subspace> {
        if k < self.start {
            return None;
        }
        self.spaces.get((k - self.start) as usize)
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    fn check_ambient(&self, m: &GradedModule) -> Result<()> {
        let ok = self.start == m.start()
            && self.spaces.len() == m.hilbert_function().len()
            && self
                .spaces
                .iter()
                .enumerate()
                .all(|(jr, s)| s.ambient_dim() == m.dim(self.start + jr as i32));
        if ok {
            Ok(())
        } else {
            Err(Error::ContainmentViolation)
        }
    }

    /// The submodule as a module in its own right, in the canonical bases.
    pub fn to_module(&self, m: &GradedModule) -> Result<GradedModule> {
        self.check_ambient(m)?;
        let dims = self.dims();
        let sp = &self.spaces;
        let start = self.start;
        GradedModule::from_fn_unchecked(
            m.algebra().clone(),
            start,
            dims,
            m.is_complete(),
            |j, x, i, a| {
                let v = sp[(j - start) as usize].basis().row(x);
                let mut e = vec![0; m.algebra().dim(i)];
                e[a] = 1;
                let w = m.act_vec(j, v, i, &e);
                let coords = sp[(j - start) as usize + i]
                    .coordinates(&w)
                    .expect("submodule is action closed");
                sparse::from_dense(&coords)
            },
        )
    }

    /// `M / S`, with the unit vectors at non-pivot positions as basis.
    pub fn quotient(&self, m: &GradedModule) -> Result<GradedModule> {
        self.check_ambient(m)?;
        let sp = &self.spaces;
        let start = self.start;
        let keep: Vec<Vec<usize>> = sp.iter().map(Subspace::non_pivots).collect();
        let dims = keep.iter().map(Vec::len).collect();
        GradedModule::from_fn_unchecked(
            m.algebra().clone(),
            start,
            dims,
            m.is_complete(),
            |j, x, i, a| {
                let jr = (j - start) as usize;
                let mut w = sparse::to_dense(m.act(j, keep[jr][x], i, a), m.dim(j + i as i32));
                sp[jr + i].reduce(&mut w);
                keep[jr + i]
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| w[c] != 0)
                    .map(|(q, &c)| (q as u32, w[c]))
                    .collect()
            },
        )
    }
}

/// `A / I` for a two-sided ideal `I`, given as a submodule of the regular module.
pub fn quotient_algebra(a: &Arc<GradedAlgebra>, ideal: &Submodule) -> Result<GradedAlgebra> {
    let regular = GradedModule::regular(a.clone());
    ideal.check_ambient(&regular)?;
    // left closure; right closure is part of being a submodule
    for (k, s) in ideal.spaces.iter().enumerate() {
        for i in 1..ideal.spaces.len() - k {
            for v in s.vectors() {
                for x in 0..a.dim(i) {
                    let mut e = vec![0; a.dim(i)];
                    e[x] = 1;
                    if !ideal.spaces[k + i].contains(&a.multiply(i, &e, k, v)) {
                        return Err(Error::NotActionClosed {
                            degree: (k + i) as i32,
                        });
                    }
                }
            }
        }
    }
    let keep: Vec<Vec<usize>> = ideal.spaces.iter().map(Subspace::non_pivots).collect();
    if keep[0].len() != 1 {
        return Err(Error::InvalidStructure("ideal contains the unit".into()));
    }
    let dims = keep.iter().map(Vec::len).collect();
    let sp = &ideal.spaces;
    let q = GradedAlgebra::from_fn_unchecked(a.field(), dims, a.is_complete(), |i, x, j, y| {
        let mut w = sparse::to_dense(a.product(i, keep[i][x], j, keep[j][y]), a.dim(i + j));
        sp[i + j].reduce(&mut w);
        keep[i + j]
            .iter()
            .enumerate()
            .filter(|(_, &c)| w[c] != 0)
            .map(|(q, &c)| (q as u32, w[c]))
            .collect::<SparseVec>()
    })?;
    Ok(q)
}
