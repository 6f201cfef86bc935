//! Content-addressed store of homology cells.
//!
//! A cell is keyed by the SHA-256 of the algebra and module structure
//! constants together with `(i, j)`; the file holds the decimal dimension.
//! Unreadable or malformed entries are treated as misses.

use std::fs;
use std::path::{Path, PathBuf};

use koszul_core::graded::{GradedAlgebra, GradedModule};
use koszul_core::homology::{certified, homology_table};
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub struct CellCache {
    dir: PathBuf,
}

impl CellCache {
    pub fn open(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, structure: &[u8; 32], i: usize, j: i32) -> PathBuf {
        let mut h = Sha256::new();
        h.update(structure);
        h.update((i as u64).to_le_bytes());
        h.update((j as i64).to_le_bytes());
        self.dir.join(hex::encode(h.finalize()))
    }

    fn get(&self, structure: &[u8; 32], i: usize, j: i32) -> Option<usize> {
        fs::read_to_string(self.path(structure, i, j))
            .ok()?
            .trim()
            .parse()
            .ok()
    }

    fn put(&self, structure: &[u8; 32], i: usize, j: i32, dim: usize) -> Result<(), CliError> {
        let path = self.path(structure, i, j);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, dim.to_string())?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

fn put_usize(h: &mut Sha256, x: usize) {
    h.update((x as u64).to_le_bytes());
}

fn put_sparse(h: &mut Sha256, v: &[(u32, u32)]) {
    put_usize(h, v.len());
    for &(k, c) in v {
        h.update(k.to_le_bytes());
        h.update(c.to_le_bytes());
    }
}

/// Digest of everything `H_{i,j}(A, M)` depends on.
pub fn structure_digest(a: &GradedAlgebra, m: &GradedModule) -> [u8; 32] {
    let mut h = Sha256::new();
    h.update(a.field().p().to_le_bytes());
    h.update([a.is_complete() as u8]);
    put_usize(&mut h, a.top());
    for k in 0..=a.top() {
        put_usize(&mut h, a.dim(k));
    }
    for i in 1..=a.top() {
        for j in 1..=a.top() - i {
            for x in 0..a.dim(i) {
                for y in 0..a.dim(j) {
                    put_sparse(&mut h, a.product(i, x, j, y));
                }
            }
        }
    }
    h.update(m.start().to_le_bytes());
    h.update(m.top().to_le_bytes());
    h.update([m.is_complete() as u8]);
    for k in m.start()..=m.top() {
        put_usize(&mut h, m.dim(k));
    }
    for k in m.start()..=m.top() {
        for i in 1..=a.top().min((m.top() - k) as usize) {
            for x in 0..m.dim(k) {
                for y in 0..a.dim(i) {
                    put_sparse(&mut h, m.act(k, x, i, y));
                }
            }
        }
    }
    h.finalize().into()
}

/// Cells `(i, j, dim)` of the rectangle `0..=i_max` × `min(start, 0)..=j_max`
/// in `(i, j)` order, read from the cache when every cell is present.
pub fn table(
    a: &GradedAlgebra,
    m: &GradedModule,
    i_max: usize,
    j_max: i32,
    cache: Option<&CellCache>,
) -> Result<Vec<(usize, i32, usize)>, CliError> {
    let j_min = m.start().min(0);
    let digest = cache.map(|_| structure_digest(a, m));
    if let (Some(c), Some(d)) = (cache, &digest) {
        let cells: Option<Vec<_>> = (0..=i_max)
            .flat_map(|i| (j_min..=j_max).map(move |j| (i, j)))
            .map(|(i, j)| c.get(d, i, j).map(|dim| (i, j, dim)))
            .collect();
        if let Some(cells) = cells {
            return Ok(cells);
        }
    }
    let t = homology_table(a, m, i_max, j_max)?;
    let cells: Vec<_> = t.cells().collect();
    if let (Some(c), Some(d)) = (cache, &digest) {
        for &(i, j, dim) in &cells {
            c.put(d, i, j, dim)?;
        }
    }
    Ok(cells)
}

/// The largest `j <= cap` such that every cell with `i <= i_max` and internal
/// degree up to `j` is determined by the truncations.
pub fn certified_j_max(a: &GradedAlgebra, m: &GradedModule, i_max: usize, cap: i32) -> Option<i32> {
    let j_min = m.start().min(0);
    let mut best = None;
    for j in j_min..=cap {
        if (0..=i_max).all(|i| certified(a, m, i, j)) {
            best = Some(j);
        } else {
            break;
        }
    }
    best
}
