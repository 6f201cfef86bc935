//! Graded homology `H_{i,j}(A, M) = Tor^A_i(M, k)_j`.
//!
//! Three routes compute the same numbers: the normalized bar complex (the
//! definition), a minimal free resolution (much smaller complexes), and for
//! polynomial rings the Koszul complex. [`Strategy::Auto`] uses the bar
//! complex while its matrices stay small and the resolution otherwise.

mod bar;
mod koszul;
mod resolution;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graded::{GradedAlgebra, GradedModule};

pub use koszul::koszul_complex_tor;
pub use resolution::MinimalResolution;

/// Largest `dim C_i * max(dim C_{i-1}, dim C_{i+1})` handled by the bar route under `Auto`.
pub const BAR_BUDGET: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Strategy {
    Bar,
    Resolution,
    Auto,
}

/// A lower bound for the degrees in which `m` can be nonzero, or `None` for a
/// module known to vanish.
fn vanishing_bound(m: &GradedModule) -> Option<i32> {
    match m.lowest_degree() {
        Some(d) => Some(d),
        None if m.is_complete() => None,
        None => Some(m.top() + 1),
    }
}

/// Whether `H_{i,j}(A, M)` is determined by the stored truncations: either it
/// vanishes because `j < i + m`, or `M` is known through `j` and `A` through `j - m`.
pub fn certified(a: &GradedAlgebra, m: &GradedModule, i: usize, j: i32) -> bool {
    match vanishing_bound(m) {
        None => true,
        Some(low) => j < i as i32 + low || (m.known(j) && a.known((j - low) as usize)),
    }
}

fn check(a: &GradedAlgebra, m: &GradedModule) -> Result<()> {
    if !m.is_over(a) {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// `dim` of the bar chain group `⊕ M_{j0} ⊗ A_{j1} ⊗ … ⊗ A_{ji}` in internal degree `j`.
pub fn bar_space_dim(a: &GradedAlgebra, m: &GradedModule, i: usize, j: i32) -> Result<usize> {
    check(a, m)?;
    if !certified(a, m, i, j) {
        return Err(Error::TruncationInsufficient { i, j });
    }
    match vanishing_bound(m) {
        Some(low) if j >= i as i32 + low => Ok(bar::chain_dim(a, m, low, i, j)),
        _ => Ok(0),
    }
}

fn bar_cost(a: &GradedAlgebra, m: &GradedModule, low: i32, i: usize, j: i32) -> usize {
    let c = bar::chain_dim(a, m, low, i, j);
    let below = if i == 0 {
        0
    } else {
        bar::chain_dim(a, m, low, i - 1, j)
    };
    let above = bar::chain_dim(a, m, low, i + 1, j);
    c.saturating_mul(below.max(above))
}

/// `dim H_{i,j}(A, M)` with the automatic route choice.
pub fn homology_dim(a: &GradedAlgebra, m: &GradedModule, i: usize, j: i32) -> Result<usize> {
    homology_dim_with(a, m, i, j, Strategy::Auto)
}

pub fn homology_dim_with(
    a: &GradedAlgebra,
    m: &GradedModule,
    i: usize,
    j: i32,
    strategy: Strategy,
) -> Result<usize> {
    check(a, m)?;
    if !certified(a, m, i, j) {
        return Err(Error::TruncationInsufficient { i, j });
    }
    let low = match vanishing_bound(m) {
        Some(low) if j >= i as i32 + low => low,
        _ => return Ok(0),
    };
    let use_bar = match strategy {
        Strategy::Bar => true,
        Strategy::Resolution => false,
        Strategy::Auto => bar_cost(a, m, low, i, j) <= BAR_BUDGET,
    };
    if use_bar {
        bar::bar_homology(a, m, low, i, j)
    } else {
        Ok(MinimalResolution::compute(a, m, low, i, j)?.betti(i, j))
    }
}

/// Whether the bar differentials `C_{i+1,j} → C_{i,j} → C_{i-1,j}` compose to zero.
pub fn bar_square_is_zero(a: &GradedAlgebra, m: &GradedModule, i: usize, j: i32) -> Result<bool> {
    check(a, m)?;
    if !certified(a, m, i + 1, j) {
        return Err(Error::TruncationInsufficient { i: i + 1, j });
    }
    match vanishing_bound(m) {
        Some(low) if i >= 1 && j >= i as i32 + low => Ok(bar::square_is_zero(a, m, low, i, j)),
        _ => Ok(true),
    }
}

/// `dim H^{i,j}(A, M)`; equal to the homology dimension by duality.
pub fn cohomology_dim(a: &GradedAlgebra, m: &GradedModule, i: usize, j: i32) -> Result<usize> {
    homology_dim(a, m, i, j)
}

/// Homology dimensions over the rectangle `0..=i_max` × `j_min..=j_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyTable {
    pub i_max: usize,
    pub j_min: i32,
    pub j_max: i32,
    /// Truncation degree of the algebra the table was computed over.
    pub truncation: usize,
    entries: BTreeMap<(usize, i32), usize>,
}

impl HomologyTable {
    pub fn get(&self, i: usize, j: i32) -> Option<usize> {
        self.entries.get(&(i, j)).copied()
    }

    /// All cells in `(i, j)` order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, i32, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &d)| (i, j, d))
    }

    /// Cells with a nonzero dimension.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, i32, usize)> + '_ {
        self.cells().filter(|c| c.2 > 0)
    }
}

pub fn homology_table(
    a: &GradedAlgebra,
    m: &GradedModule,
    i_max: usize,
    j_max: i32,
) -> Result<HomologyTable> {
    homology_table_with(a, m, i_max, j_max, Strategy::Auto)
}

/// Builds the table. Cells are independent and evaluated in parallel on the
/// bar route; the resolution route computes the whole rectangle at once.
/// The result does not depend on the schedule.
pub fn homology_table_with(
    a: &GradedAlgebra,
    m: &GradedModule,
    i_max: usize,
    j_max: i32,
    strategy: Strategy,
) -> Result<HomologyTable> {
    check(a, m)?;
    let j_min = m.start().min(0);
    let cells: Vec<(usize, i32)> = (0..=i_max)
        .flat_map(|i| (j_min..=j_max).map(move |j| (i, j)))
        .collect();
    if let Some(&(i, j)) = cells.iter().find(|&&(i, j)| !certified(a, m, i, j)) {
        return Err(Error::TruncationInsufficient { i, j });
    }
    let mut table = HomologyTable {
        i_max,
        j_min,
        j_max,
        truncation: a.top(),
        entries: BTreeMap::new(),
    };
    let Some(low) = vanishing_bound(m) else {
        table.entries = cells.into_iter().map(|c| (c, 0)).collect();
        return Ok(table);
    };
    let live = |&(i, j): &(usize, i32)| j >= i as i32 + low;
    let use_bar = match strategy {
        Strategy::Bar => true,
        Strategy::Resolution => false,
        Strategy::Auto => cells
            .iter()
            .filter(|c| live(c))
            .all(|&(i, j)| bar_cost(a, m, low, i, j) <= BAR_BUDGET),
    };
    let dims: Vec<usize> = if use_bar {
        cells
            .par_iter()
            .map(|c| {
                if live(c) {
                    bar::bar_homology(a, m, low, c.0, c.1)
                } else {
                    Ok(0)
                }
            })
            .collect::<Result<_>>()?
    } else if j_max >= low {
        let res = MinimalResolution::compute(a, m, low, i_max, j_max)?;
        cells
            .iter()
            .map(|c| if live(c) { res.betti(c.0, c.1) } else { 0 })
            .collect()
    } else {
        vec![0; cells.len()]
    };
    table.entries = cells.into_iter().zip(dims).collect();
    Ok(table)
}
