use crate::error::{Error, Result};
use crate::fplinalg::{sparse, FpMatrix, PrimeField, SparseVec};

/// A connected graded algebra known in degrees `0..=top`.
///
/// When `complete` is set every component above `top` is known to vanish, so
/// the algebra is known in all degrees. Products are stored for every pair of
/// degrees `(i, j)` with `i + j <= top`, one sparse column per basis pair
/// `(a, b)` at index `a * dim(j) + b`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedAlgebra {
    field: PrimeField,
    dims: Vec<usize>,
    complete: bool,
    products: Vec<Vec<SparseVec>>,
}

impl GradedAlgebra {
    /// Builds an algebra from a product callback `f(i, a, j, b)` returning
    /// `a * b` in `A_{i+j}` for basis elements `a` of `A_i`, `b` of `A_j`,
    /// `i, j >= 1`. Degree 0 acts as the unit. Associativity is verified.
    pub fn from_fn<F>(field: PrimeField, dims: Vec<usize>, complete: bool, f: F) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize) -> SparseVec,
    {
        let a = Self::from_fn_unchecked(field, dims, complete, f)?;
        a.check_associative()?;
        Ok(a)
    }

    pub(crate) fn from_fn_unchecked<F>(
        field: PrimeField,
        dims: Vec<usize>,
        complete: bool,
        f: F,
    ) -> Result<Self>
    where
        F: Fn(usize, usize, usize, usize) -> SparseVec,
    {
        if dims.first() != Some(&1) {
            return Err(Error::InvalidStructure(
                "degree-0 component must be one-dimensional".into(),
            ));
        }
        let top = dims.len() - 1;
        let mut products = vec![Vec::new(); (top + 1) * (top + 1)];
        for i in 0..=top {
            for j in 0..=top - i {
                let mut cols = Vec::with_capacity(dims[i] * dims[j]);
                for a in 0..dims[i] {
                    for b in 0..dims[j] {
                        let v = if i == 0 {
                            vec![(b as u32, 1)]
                        } else if j == 0 {
                            vec![(a as u32, 1)]
                        } else {
                            normalize(field, f(i, a, j, b), dims[i + j])?
                        };
                        cols.push(v);
                    }
                }
                products[i * (top + 1) + j] = cols;
            }
        }
        Ok(Self {
            field,
            dims,
            complete,
            products,
        })
    }

    /// The ground field `k`, concentrated in degree 0.
    pub fn trivial(field: PrimeField) -> Self {
        Self::from_fn_unchecked(field, vec![1], true, |_, _, _, _| Vec::new()).unwrap()
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    /// Highest degree stored.
    #[inline]
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    #[inline]
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    #[inline]
    pub fn known(&self, k: usize) -> bool {
        self.complete || k <= self.top()
    }

    /// Dimension of `A_k`. Panics if the degree is beyond the truncation.
    #[inline]
    pub fn dim(&self, k: usize) -> usize {
        match self.dims.get(k) {
            Some(&d) => d,
            None if self.complete => 0,
            None => panic!("degree {k} beyond truncation {}", self.top()),
        }
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.dims.clone()
    }

    /// `a * b` for basis elements `a` of `A_i` and `b` of `A_j`.
    #[inline]
    pub fn product(&self, i: usize, a: usize, j: usize, b: usize) -> &[(u32, u32)] {
        let top = self.top();
        if i + j > top {
            assert!(
                self.complete,
                "product in degree {} beyond truncation",
                i + j
            );
            return &[];
        }
        &self.products[i * (top + 1) + j][a * self.dims[j] + b]
    }

    /// Product of arbitrary elements given in coordinates.
    pub fn multiply(&self, i: usize, x: &[u32], j: usize, y: &[u32]) -> Vec<u32> {
        let mut out = vec![0; self.dim(i + j)];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb != 0 {
                    let c = self.field.mul(xa, yb);
                    sparse::axpy(self.field, &mut out, c, self.product(i, a, j, b));
                }
            }
        }
        out
    }

    /// The multiplication map `A_i ⊗ A_j → A_{i+j}` as a `dim(i+j) x dim(i)dim(j)` matrix.
    pub fn product_matrix(&self, i: usize, j: usize) -> FpMatrix {
        let cols: Vec<SparseVec> = (0..self.dim(i) * self.dim(j))
            .map(|k| {
                let (a, b) = (k / self.dim(j), k % self.dim(j));
                self.product(i, a, j, b).to_vec()
            })
            .collect();
        FpMatrix::from_sparse_columns(self.field, self.dim(i + j), &cols)
    }

    /// The same algebra known only up to degree `d`.
    pub fn truncate(&self, d: usize) -> Self {
        if d >= self.top() {
            return self.clone();
        }
        let dims = self.dims[..=d].to_vec();
        let zero_above = self.dims[d + 1..].iter().all(|&x| x == 0);
        Self::from_fn_unchecked(
            self.field,
            dims,
            self.complete && zero_above,
            |i, a, j, b| self.product(i, a, j, b).to_vec(),
        )
        .unwrap()
    }

    /// For an algebra generated in degree 1, a vanishing component forces all
    /// higher ones to vanish; such an algebra is cut there and marked complete.
    pub fn sealed(self) -> Self {
        if self.first_degree_not_generated().is_some() {
            return self;
        }
        match (1..self.dims.len()).find(|&k| self.dims[k] == 0) {
            Some(k) => {
                let mut a = self.truncate(k);
                a.complete = true;
                a
            }
            None => self,
        }
    }

    /// Checks that `A_1 ⊗ A_{k-1} → A_k` is onto for every stored `k`;
    /// returns the first failing degree.
    pub fn first_degree_not_generated(&self) -> Option<usize> {
        (2..=self.top()).find(|&k| self.product_matrix(1, k - 1).rank() < self.dim(k))
    }

    fn check_associative(&self) -> Result<()> {
        let top = self.top();
        let f = self.field;
        for i in 1..=top {
            for j in 1..=top - i {
                for k in 1..=top - i - j {
                    let n = self.dim(i + j + k);
                    for a in 0..self.dim(i) {
                        for b in 0..self.dim(j) {
                            let ab = self.product(i, a, j, b);
                            for c in 0..self.dim(k) {
                                let mut lhs = vec![0; n];
                                for &(x, s) in ab {
                                    sparse::axpy(
                                        f,
                                        &mut lhs,
                                        s,
                                        self.product(i + j, x as usize, k, c),
                                    );
                                }
                                let mut rhs = vec![0; n];
                                for &(y, s) in self.product(j, b, k, c) {
                                    sparse::axpy(
                                        f,
                                        &mut rhs,
                                        s,
                                        self.product(i, a, j + k, y as usize),
                                    );
                                }
                                if lhs != rhs {
                                    return Err(Error::InvalidStructure(format!(
                                        "product is not associative in degrees ({i}, {j}, {k})"
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

/// Sorts, merges duplicate indices, reduces and drops zeros.
pub(crate) fn normalize(field: PrimeField, mut v: SparseVec, len: usize) -> Result<SparseVec> {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, x) in v {
        if i as usize >= len {
            return Err(Error::MalformedVector(format!(
                "index {i} in a component of dimension {len}"
            )));
        }
        let x = field.reduce(x);
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(last.1, x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| e.1 != 0);
    Ok(out)
}

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "GradedAlgebra {{ {}, dims: {:?}{} }}",
            self.field,
            self.dims,
            if self.complete { "" } else { ", truncated" }
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn truncated_polynomial(p: u64, top: usize, nilpotent_from: usize) -> Result<GradedAlgebra> {
        // k[x]/(x^n) with one basis element per degree
        let field = PrimeField::new(p).unwrap();
        let dims = (0..=top).map(|k| usize::from(k < nilpotent_from)).collect();
        GradedAlgebra::from_fn(field, dims, true, |i, _, j, _| {
            if i + j < nilpotent_from {
                vec![(0, 1)]
            } else {
                Vec::new()
            }
        })
    }

    #[test]
    fn cube_truncated_polynomial() {
        let a = truncated_polynomial(3, 2, 3).unwrap();
        assert_eq!(a.hilbert_function(), vec![1, 1, 1]);
        assert_eq!(a.dim(5), 0);
        assert_eq!(a.product(1, 0, 1, 0), &[(0, 1)]);
        assert_eq!(a.first_degree_not_generated(), None);
    }

    #[test]
    fn rejects_nonassociative_products() {
        let field = PrimeField::new(5).unwrap();
        // x*x = y but x*y = 0 while y*x = z: (x x) x = y x = z, x (x x) = x y = 0
        let r = GradedAlgebra::from_fn(field, vec![1, 1, 1, 1], true, |i, _, j, _| match (i, j) {
            (1, 1) | (2, 1) => vec![(0, 1)],
            _ => Vec::new(),
        });
        assert!(matches!(r, Err(Error::InvalidStructure(_))));
    }

    #[test]
    fn truncation_keeps_products() {
        let a = truncated_polynomial(2, 4, 5).unwrap();
        let t = a.truncate(2);
        assert_eq!(t.top(), 2);
        assert!(!t.is_complete());
        assert!(!t.known(3));
        assert_eq!(t.product(1, 0, 1, 0), &[(0, 1)]);
    }
}
