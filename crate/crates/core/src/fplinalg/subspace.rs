use super::field::PrimeField;
use super::matrix::FpMatrix;
use crate::error::{Error, Result};

/// A subspace of `F_p^n`, stored by its canonical reduced row-echelon basis.
/// Two subspaces are equal iff their bases are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: FpMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: FpMatrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            basis: FpMatrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn from_spanning(m: &FpMatrix) -> Self {
        let r = m.rref();
        Self {
            basis: r.matrix,
            pivots: r.pivots,
        }
    }

    pub fn from_vectors(field: PrimeField, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let mut data = Vec::with_capacity(vectors.len() * ambient);
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in ambient dimension {ambient}",
                    v.len()
                )));
            }
            data.extend_from_slice(v);
        }
        Ok(Self::from_spanning(&FpMatrix::from_vec(
            field,
            vectors.len(),
            ambient,
            data,
        )?))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.dim()).map(|r| self.basis.row(r))
    }

    /// Columns that are not pivots; their unit vectors span a complement.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut mark = vec![false; self.ambient_dim()];
        for &c in &self.pivots {
            mark[c] = true;
        }
        (0..self.ambient_dim()).filter(|&c| !mark[c]).collect()
    }

    /// Reduces `v` modulo the subspace, in place. The result is the canonical
    /// representative of `v + U`: zero at every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = self.field();
        for (r, &c) in self.pivots.iter().enumerate() {
            let x = v[c];
            if x == 0 {
                continue;
            }
            let neg = f.p() - x;
            for (y, &b) in v[c..].iter_mut().zip(&self.basis.row(r)[c..]) {
                if b != 0 {
                    *y = f.mul_add(neg, b, *y);
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().all(|v| self.contains(v))
    }

    /// Coordinates of `v` in the canonical basis; `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// Coordinates of the class of `v` in `F_p^n / U`, relative to the unit
    /// vectors at the non-pivot columns.
    pub fn quotient_coordinates(&self, v: &[u32]) -> Vec<u32> {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        self.non_pivots().into_iter().map(|c| w[c]).collect()
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(Self::from_spanning(&self.basis.vstack(&other.basis)?))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn perp(&self) -> Subspace {
        if self.is_zero() {
            return Self::full(self.field(), self.ambient_dim());
        }
        self.basis.kernel_basis()
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().p(), other.field().p()));
        }
        if self.ambient_dim() != other.ambient_dim() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient_dim(),
                other.ambient_dim()
            )));
        }
        Ok(())
    }
}

/// `{f : v^T P f = 0 for all v in s}`, a subspace of `F_p^m` for an `n x m` pairing `P`.
pub fn annihilator(s: &Subspace, pairing: &FpMatrix) -> Result<Subspace> {
    if pairing.rows() != s.ambient_dim() {
        return Err(Error::DimensionMismatch(format!(
            "pairing has {} rows, subspace lives in dimension {}",
            pairing.rows(),
            s.ambient_dim()
        )));
    }
    if s.is_zero() {
        return Ok(Subspace::full(s.field(), pairing.cols()));
    }
    Ok(s.basis().mul(pairing)?.kernel_basis())
}

/// `dim(big) - dim(small)`, after checking `small ⊆ big`.
pub fn quotient_dim(big: &Subspace, small: &Subspace) -> Result<usize> {
    big.check_compatible(small)?;
    if !big.contains_subspace(small) {
        return Err(Error::ContainmentViolation);
    }
    Ok(big.dim() - small.dim())
}
