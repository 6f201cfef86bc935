use std::fmt;

use super::bits::BitRows;
use super::field::PrimeField;
use super::sparse::SparseVec;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row-echelon form: the nonzero rows and their pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from residues; entries are reduced mod `p`.
    pub fn from_vec(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let data = data.into_iter().map(|x| field.reduce(x)).collect();
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds a matrix from signed integer rows.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| field.from_i64(x)))
            .collect();
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a `rows x columns.len()` matrix whose `k`-th column is `columns[k]`.
    pub fn from_sparse_columns(field: PrimeField, rows: usize, columns: &[SparseVec]) -> Self {
        let cols = columns.len();
        let mut m = Self::zeros(field, rows, cols);
        for (k, col) in columns.iter().enumerate() {
            for &(i, c) in col {
                m.data[i as usize * cols + k] = c;
            }
        }
        m
    }

    /// Builds a matrix whose rows are the given sparse vectors of length `cols`.
    pub fn from_sparse_rows(field: PrimeField, cols: usize, rows: &[SparseVec]) -> Self {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for &(k, c) in row {
                m.data[i * cols + k as usize] = c;
            }
        }
        m
    }

    pub(crate) fn from_raw(field: PrimeField, rows: usize, cols: usize, data: Vec<u32>) -> Self {
        debug_assert_eq!(data.len(), rows * cols);
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> u32 {
        self.data[i * self.cols + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, k: usize, value: u32) {
        self.data[i * self.cols + k] = self.field.reduce(value);
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, k: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, k)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for k in 0..self.cols {
                t.data[k * self.rows + i] = self.data[i * self.cols + k];
            }
        }
        t
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.p(), other.field.p()));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let n = other.cols;
        let mut acc = vec![0u64; n];
        let mut out = Vec::with_capacity(self.rows * n);
        for i in 0..self.rows {
            acc.iter_mut().for_each(|x| *x = 0);
            for (k, &a) in self.row(i).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                for (x, &b) in acc.iter_mut().zip(other.row(k)) {
                    *x += (a * b) as u64;
                }
            }
            out.extend(acc.iter().map(|&x| self.field.reduce_u64(x)));
        }
        Ok(Self::from_raw(self.field, self.rows, n, out))
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let s: u64 = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| (a * b) as u64)
                    .sum();
                self.field.reduce_u64(s)
            })
            .collect()
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &FpMatrix) -> Result<FpMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack of different widths".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self::from_raw(
            self.field,
            self.rows + other.rows,
            self.cols,
            data,
        ))
    }

    /// Row echelon form of a copy; returns (entries, pivot columns).
    fn echelon(&self, reduced: bool) -> (Vec<u32>, Vec<usize>) {
        if self.field.p() == 2 {
            let mut bits = BitRows::from_residues(self.rows, self.cols, &self.data);
            let pivots = bits.echelon(reduced);
            return (bits.to_residues(pivots.len()), pivots);
        }
        let mut data = self.data.clone();
        let pivots = echelon_in_place(self.field, &mut data, self.rows, self.cols, reduced);
        data.truncate(pivots.len() * self.cols);
        (data, pivots)
    }

    pub fn rank(&self) -> usize {
        self.echelon(false).1.len()
    }

    /// Canonical reduced row-echelon form (zero rows dropped).
    pub fn rref(&self) -> Rref {
        let (data, pivots) = self.echelon(true);
        Rref {
            matrix: Self::from_raw(self.field, pivots.len(), self.cols, data),
            pivots,
        }
    }

    /// Basis of `{x : self * x = 0}`, in canonical form.
    pub fn kernel_basis(&self) -> Subspace {
        let Rref { matrix, pivots } = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&c| !is_pivot[c]).collect();
        let mut data = vec![0u32; free.len() * n];
        for (r, &f) in free.iter().enumerate() {
            let v = &mut data[r * n..(r + 1) * n];
            v[f] = 1;
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = self.field.neg(matrix.get(row, f));
            }
        }
        let vectors = Self::from_raw(self.field, free.len(), n, data);
        Subspace::from_spanning(&vectors)
    }

    /// Span of the rows.
    pub fn row_space(&self) -> Subspace {
        Subspace::from_spanning(self)
    }

    /// Span of the columns.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_spanning(&self.transpose())
    }
}

/// Gaussian elimination on a row-major block. Only the nonzero entries of the
/// pivot row are touched in each update, which keeps sparse inputs cheap.
pub(crate) fn echelon_in_place(
    field: PrimeField,
    data: &mut [u32],
    rows: usize,
    cols: usize,
    reduced: bool,
) -> Vec<usize> {
    let p = field.p();
    let mut pivots = Vec::new();
    let mut r = 0;
    let mut pivot_entries: Vec<(usize, u32)> = Vec::with_capacity(cols);
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if piv != r {
            for k in c..cols {
                data.swap(piv * cols + k, r * cols + k);
            }
        }
        let lead = data[r * cols + c];
        if lead != 1 {
            let inv = field.inv(lead);
            for x in &mut data[r * cols + c..(r + 1) * cols] {
                *x = field.mul(*x, inv);
            }
        }
        pivot_entries.clear();
        pivot_entries.extend(
            data[r * cols + c..(r + 1) * cols]
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| (c + k, x)),
        );
        let start = if reduced { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let f = data[i * cols + c];
            if f == 0 {
                continue;
            }
            let f = p - f;
            let row = &mut data[i * cols..(i + 1) * cols];
            for &(k, x) in &pivot_entries {
                row[k] = field.mul_add(f, x, row[k]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "FpMatrix {}x{} over {}",
            self.rows, self.cols, self.field
        )?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FpMatrix::identity(f(5), 2).rank(), 2);
        assert_eq!(FpMatrix::zeros(f(5), 3, 4).rank(), 0);
        let m = FpMatrix::from_rows(f(5), &[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn minors_agree_with_rank_on_2x2() {
        // rank of a 2x2 matrix is 2 iff det != 0, 1 iff some entry != 0
        let p = 5u32;
        for code in 0..p.pow(4) {
            let e = [code % p, code / p % p, code / p / p % p, code / p / p / p];
            let m = FpMatrix::from_vec(f(5), 2, 2, e.to_vec()).unwrap();
            let det = (e[0] * e[3] + p * p - e[1] * e[2] % p) % p;
            let expected = if det != 0 {
                2
            } else if e.iter().any(|&x| x != 0) {
                1
            } else {
                0
            };
            assert_eq!(m.rank(), expected, "{e:?}");
        }
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert_eq!(FpMatrix::identity(f(3), 4).kernel_basis().dim(), 0);
        assert_eq!(FpMatrix::zeros(f(3), 2, 3).kernel_basis().dim(), 3);
    }

    #[test]
    fn kernel_of_row_one_one_mod_two() {
        let m = FpMatrix::from_rows(f(2), &[vec![1, 1]]).unwrap();
        let k = m.kernel_basis();
        // enumerate F_2^2: only (0,0) and (1,1) are killed
        let killed: Vec<[u32; 2]> = (0..4u32)
            .map(|c| [c & 1, c >> 1])
            .filter(|v| m.mul_vec(v).iter().all(|&x| x == 0))
            .collect();
        assert_eq!(killed.len(), 2);
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis().row(0), &[1, 1]);
    }

    #[test]
    fn rref_is_canonical() {
        let m = FpMatrix::from_rows(f(7), &[vec![2, 4, 1], vec![1, 2, 3], vec![3, 6, 4]]).unwrap();
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.matrix.row(0), &[1, 2, 0]);
        assert_eq!(r.matrix.row(1), &[0, 0, 1]);
    }

    #[test]
    fn product_and_transpose() {
        let a = FpMatrix::from_rows(f(3), &[vec![1, 2], vec![0, 1]]).unwrap();
        let b = FpMatrix::from_rows(f(3), &[vec![1, 1], vec![1, 0]]).unwrap();
        let c = a.mul(&b).unwrap();
        assert_eq!(c.data(), &[0, 1, 1, 0]);
        assert_eq!(a.transpose().data(), &[1, 0, 2, 1]);
    }
}
