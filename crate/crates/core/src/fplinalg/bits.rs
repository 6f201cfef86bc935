//! Packed elimination over `F_2`. Used transparently by [`super::FpMatrix`]
//! whenever `p = 2`; results are identical to the generic path.

pub(crate) struct BitRows {
    words: usize,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl BitRows {
    pub fn from_residues(rows: usize, cols: usize, entries: &[u32]) -> Self {
        let words = cols.div_ceil(64).max(1);
        let mut data = vec![0u64; rows * words];
        for i in 0..rows {
            let src = &entries[i * cols..(i + 1) * cols];
            let dst = &mut data[i * words..(i + 1) * words];
            for (k, &x) in src.iter().enumerate() {
                if x & 1 == 1 {
                    dst[k / 64] |= 1 << (k % 64);
                }
            }
        }
        Self {
            words,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    fn bit(&self, i: usize, k: usize) -> bool {
        (self.data[i * self.words + k / 64] >> (k % 64)) & 1 == 1
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let w = self.words;
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * w);
        head[lo * w..(lo + 1) * w].swap_with_slice(&mut tail[..w]);
    }

    /// Row echelon form in place; fully reduced when `reduced` is set.
    /// Returns the pivot columns.
    pub fn echelon(&mut self, reduced: bool) -> Vec<usize> {
        let w = self.words;
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut pivot_row = vec![0u64; w];
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.bit(i, c)) else {
                continue;
            };
            self.swap_rows(piv, r);
            let first = c / 64;
            pivot_row[first..].copy_from_slice(&self.data[r * w + first..(r + 1) * w]);
            let start = if reduced { 0 } else { r + 1 };
            for i in start..self.rows {
                if i != r && self.bit(i, c) {
                    let row = &mut self.data[i * w + first..(i + 1) * w];
                    for (x, y) in row.iter_mut().zip(&pivot_row[first..]) {
                        *x ^= *y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Writes the first `count` rows back as residues.
    pub fn to_residues(&self, count: usize) -> Vec<u32> {
        let mut out = vec![0u32; count * self.cols];
        for i in 0..count {
            for k in 0..self.cols {
                if self.bit(i, k) {
                    out[i * self.cols + k] = 1;
                }
            }
        }
        out
    }
}
