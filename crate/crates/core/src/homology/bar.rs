//! The normalized bar complex `M ⊗ A_+^{⊗i}` in a fixed internal degree.
//!
//! Differential:
//! `d(m⊗a1⊗…⊗ai) = m·a1⊗a2⊗…⊗ai + Σ_{s=1}^{i-1} (-1)^s m⊗a1⊗…⊗(a_s a_{s+1})⊗…⊗ai`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fplinalg::{sparse, PrimeField, SparseVec};
use crate::graded::{GradedAlgebra, GradedModule};

/// One summand `M_{j0} ⊗ A_{p1} ⊗ … ⊗ A_{pi}` of a bar chain group.
#[derive(Debug)]
struct Block {
    j0: i32,
    parts: Vec<usize>,
    offset: usize,
    // dims of the factors, module first
    radix: Vec<usize>,
}

/// The chain group `C_{i,j}` with its block layout.
pub(crate) struct ChainGroup {
    blocks: Vec<Block>,
    lookup: HashMap<(i32, Vec<usize>), usize>,
    dim: usize,
}

fn compositions(total: usize, parts: usize, out: &mut Vec<Vec<usize>>, acc: &mut Vec<usize>) {
    if parts == 0 {
        if total == 0 {
            out.push(acc.clone());
        }
        return;
    }
    if total < parts {
        return;
    }
    for first in 1..=total - (parts - 1) {
        acc.push(first);
        compositions(total - first, parts - 1, out, acc);
        acc.pop();
    }
}

impl ChainGroup {
    pub(crate) fn new(a: &GradedAlgebra, m: &GradedModule, low: i32, i: usize, j: i32) -> Self {
        let mut blocks = Vec::new();
        let mut lookup = HashMap::new();
        let mut offset = 0;
        for j0 in low..=j - i as i32 {
            let dm = m.dim(j0);
            if dm == 0 {
                continue;
            }
            let mut comps = Vec::new();
            compositions((j - j0) as usize, i, &mut comps, &mut Vec::new());
            for parts in comps {
                let mut radix = vec![dm];
                radix.extend(parts.iter().map(|&p| a.dim(p)));
                let size: usize = radix.iter().product();
                if size == 0 {
                    continue;
                }
                lookup.insert((j0, parts.clone()), blocks.len());
                blocks.push(Block {
                    j0,
                    parts,
                    offset,
                    radix,
                });
                offset += size;
            }
        }
        Self {
            blocks,
            lookup,
            dim: offset,
        }
    }

    pub(crate) fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, j0: i32, parts: &[usize], digits: &[usize]) -> Option<usize> {
        let b = &self.blocks[*self.lookup.get(&(j0, parts.to_vec()))?];
        let mut idx = 0;
        for (d, r) in digits.iter().zip(&b.radix) {
            idx = idx * r + d;
        }
        Some(b.offset + idx)
    }
}

/// Columns of `d_i : C_{i,j} → C_{i-1,j}`.
pub(crate) fn differential(
    a: &GradedAlgebra,
    m: &GradedModule,
    src: &ChainGroup,
    dst: &ChainGroup,
    i: usize,
) -> Vec<SparseVec> {
    let f: PrimeField = a.field();
    let mut cols = Vec::with_capacity(src.dim);
    let mut digits = Vec::new();
    let mut acc: Vec<(usize, u32)> = Vec::new();
    for b in &src.blocks {
        let size: usize = b.radix.iter().product();
        for flat in 0..size {
            digits.clear();
            let mut rest = flat;
            for r in b.radix.iter().rev() {
                digits.push(rest % r);
                rest /= r;
            }
            digits.reverse();
            acc.clear();
            // m · a1
            let j1 = b.j0 + b.parts[0] as i32;
            for &(x, c) in m.act(b.j0, digits[0], b.parts[0], digits[1]) {
                let mut d = vec![x as usize];
                d.extend_from_slice(&digits[2..]);
                if let Some(idx) = dst.index(j1, &b.parts[1..], &d) {
                    acc.push((idx, c));
                }
            }
            // a_s a_{s+1}
            for s in 1..i {
                let sign = f.sign(s);
                let (p, q) = (b.parts[s - 1], b.parts[s]);
                let mut parts = b.parts.clone();
                parts[s - 1] = p + q;
                parts.remove(s);
                for &(x, c) in a.product(p, digits[s], q, digits[s + 1]) {
                    let mut d = digits.clone();
                    d[s] = x as usize;
                    d.remove(s + 1);
                    if let Some(idx) = dst.index(b.j0, &parts, &d) {
                        acc.push((idx, f.mul(sign, c)));
                    }
                }
            }
            acc.sort_unstable_by_key(|e| e.0);
            let mut col: SparseVec = Vec::with_capacity(acc.len());
            for &(idx, c) in &acc {
                match col.last_mut() {
                    Some(last) if last.0 as usize == idx => last.1 = f.add(last.1, c),
                    _ => col.push((idx as u32, c)),
                }
            }
            col.retain(|e| e.1 != 0);
            cols.push(col);
        }
    }
    cols
}

/// Checks `d_i ∘ d_{i+1} = 0` on sparse columns.
pub(crate) fn check_square_zero(
    f: PrimeField,
    lower: &[SparseVec],
    upper: &[SparseVec],
    rows: usize,
) -> Result<()> {
    let mut acc = vec![0u32; rows];
    for col in upper {
        for &(k, c) in col {
            sparse::axpy(f, &mut acc, c, &lower[k as usize]);
        }
        if acc.iter().any(|&x| x != 0) {
            return Err(Error::InvalidStructure(
                "bar differential does not square to zero".into(),
            ));
        }
    }
    Ok(())
}

/// `dim H_{i,j}` of the bar complex. The caller guarantees certification.
pub(crate) fn bar_homology(
    a: &GradedAlgebra,
    m: &GradedModule,
    low: i32,
    i: usize,
    j: i32,
) -> Result<usize> {
    let f = a.field();
    let ci = ChainGroup::new(a, m, low, i, j);
    if ci.dim() == 0 {
        return Ok(0);
    }
    let (down, below_dim) = if i == 0 {
        (Vec::new(), 0)
    } else {
        let below = ChainGroup::new(a, m, low, i - 1, j);
        (differential(a, m, &ci, &below, i), below.dim())
    };
    let above = ChainGroup::new(a, m, low, i + 1, j);
    let up = if above.dim() == 0 {
        Vec::new()
    } else {
        differential(a, m, &above, &ci, i + 1)
    };
    if i > 0 && !up.is_empty() {
        check_square_zero(f, &down, &up, below_dim)?;
    }
    let rank_out = sparse::rank_of_rows(f, down);
    let rank_in = sparse::rank_of_rows(f, up);
    Ok(ci.dim() - rank_out - rank_in)
}

/// Whether `d_i ∘ d_{i+1}` vanishes in internal degree `j`, for `i >= 1`.
pub(crate) fn square_is_zero(
    a: &GradedAlgebra,
    m: &GradedModule,
    low: i32,
    i: usize,
    j: i32,
) -> bool {
    let below = ChainGroup::new(a, m, low, i - 1, j);
    let mid = ChainGroup::new(a, m, low, i, j);
    let above = ChainGroup::new(a, m, low, i + 1, j);
    let down = differential(a, m, &mid, &below, i);
    let up = differential(a, m, &above, &mid, i + 1);
    check_square_zero(a.field(), &down, &up, below.dim()).is_ok()
}

/// `dim C_{i,j}` without building the complex.
pub(crate) fn chain_dim(a: &GradedAlgebra, m: &GradedModule, low: i32, i: usize, j: i32) -> usize {
    // ways[t] = dim of ⊕ A_{p1}⊗…⊗A_{pk} over compositions of t into k parts
    let span = (j - low).max(0) as usize;
    let mut ways = vec![0usize; span + 1];
    ways[0] = 1;
    for _ in 0..i {
        let mut next = vec![0usize; span + 1];
        for (t, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for p in 1..=span - t {
                next[t + p] = next[t + p].saturating_add(w.saturating_mul(a.dim(p)));
            }
        }
        ways = next;
    }
    (low..=j)
        .map(|j0| m.dim(j0).saturating_mul(ways[(j - j0) as usize]))
        .fold(0usize, usize::saturating_add)
}
