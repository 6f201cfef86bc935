use super::field::PrimeField;

/// A vector stored as `(index, nonzero residue)` pairs, indices ascending.
pub type SparseVec = Vec<(u32, u32)>;

pub fn from_dense(v: &[u32]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(i, &x)| (i as u32, x))
        .collect()
}

pub fn to_dense(v: &[(u32, u32)], len: usize) -> Vec<u32> {
    let mut out = vec![0; len];
    for &(i, x) in v {
        out[i as usize] = x;
    }
    out
}

/// `acc += c * v` on a dense accumulator.
#[inline]
pub fn axpy(field: PrimeField, acc: &mut [u32], c: u32, v: &[(u32, u32)]) {
    if c == 0 {
        return;
    }
    for &(i, x) in v {
        let slot = &mut acc[i as usize];
        *slot = field.mul_add(c, x, *slot);
    }
}

/// Rank of the span of sparse vectors, by incremental elimination against a
/// pivot table. Suited to the very sparse matrices of monomial complexes.
pub fn rank_of_rows(field: PrimeField, rows: impl IntoIterator<Item = SparseVec>) -> usize {
    use std::collections::HashMap;
    let mut pivots: HashMap<u32, SparseVec> = HashMap::new();
    let mut scratch: SparseVec = Vec::new();
    for mut row in rows {
        row.retain(|e| e.1 != 0);
        while let Some(&(lead, c)) = row.first() {
            let Some(prow) = pivots.get(&lead) else {
                // normalize so the leading coefficient is 1
                let inv = field.inv(c);
                for e in row.iter_mut() {
                    e.1 = field.mul(e.1, inv);
                }
                pivots.insert(lead, row);
                break;
            };
            // row -= c * prow, merging two sorted lists
            let neg = field.neg(c);
            scratch.clear();
            let (mut x, mut y) = (0, 0);
            while x < row.len() || y < prow.len() {
                let take_row = y == prow.len() || (x < row.len() && row[x].0 < prow[y].0);
                let take_piv = x == row.len() || (y < prow.len() && prow[y].0 < row[x].0);
                if take_row {
                    scratch.push(row[x]);
                    x += 1;
                } else if take_piv {
                    scratch.push((prow[y].0, field.mul(neg, prow[y].1)));
                    y += 1;
                } else {
                    let v = field.mul_add(neg, prow[y].1, row[x].1);
                    if v != 0 {
                        scratch.push((row[x].0, v));
                    }
                    x += 1;
                    y += 1;
                }
            }
            std::mem::swap(&mut row, &mut scratch);
        }
    }
    pivots.len()
}
