//! Quadratic algebras `{V, R} = T(V)/(R)` and quadratic modules
//! `⟨H, K⟩ = (H ⊗ A)/(K·A)`: realization, duals, quadratic parts, and ideals
//! of exterior algebras generated in degree 2.
//!
//! Tensor coordinates: `V ⊗ V` has basis `v_a ⊗ v_b` at index `a * n + b`,
//! `H ⊗ V` has `h ⊗ v_b` at `h * n + b`. Duals use the dual bases, so the
//! pairing `(v⊗w, f⊗g) ↦ f(v)g(w)` is the identity matrix.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fplinalg::{annihilator, sparse, FpMatrix, PrimeField, SparseVec, Subspace};
use crate::graded::{quotient_algebra, GradedAlgebra, GradedModule, Submodule};

/// Largest `dim X_{k-1} · dim V` allowed while realizing a degree-`k` component.
pub const REALIZE_BUDGET: usize = 1 << 15;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticAlgebraPresentation {
    pub v_dim: usize,
    pub relations: Subspace,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticModulePresentation {
    pub h_dim: usize,
    pub relations: Subspace,
    pub over: QuadraticAlgebraPresentation,
}

impl QuadraticAlgebraPresentation {
    pub fn new(v_dim: usize, relations: Subspace) -> Result<Self> {
        if relations.ambient_dim() != v_dim * v_dim {
            return Err(Error::DimensionMismatch(format!(
                "relations live in dimension {}, expected {}",
                relations.ambient_dim(),
                v_dim * v_dim
            )));
        }
        Ok(Self { v_dim, relations })
    }

    pub fn field(&self) -> PrimeField {
        self.relations.field()
    }

    /// The tensor algebra: no relations.
    pub fn free(field: PrimeField, v_dim: usize) -> Self {
        Self {
            v_dim,
            relations: Subspace::zero(field, v_dim * v_dim),
        }
    }

    /// `R = span{x⊗x, x⊗y + y⊗x}`, presenting `Λ(V)` in every characteristic.
    pub fn exterior(field: PrimeField, n: usize) -> Self {
        let mut gens = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut v = vec![0; n * n];
                v[a * n + b] = 1;
                v[b * n + a] = 1;
                gens.push(v);
            }
        }
        Self {
            v_dim: n,
            relations: Subspace::from_vectors(field, n * n, &gens).unwrap(),
        }
    }

    /// `R = span{x⊗y - y⊗x}`, presenting `S(V)`.
    pub fn symmetric(field: PrimeField, n: usize) -> Self {
        let mut gens = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut v = vec![0; n * n];
                v[a * n + b] = 1;
                v[b * n + a] = field.neg(1);
                gens.push(v);
            }
        }
        Self {
            v_dim: n,
            relations: Subspace::from_vectors(field, n * n, &gens).unwrap(),
        }
    }
}

impl QuadraticModulePresentation {
    pub fn new(
        h_dim: usize,
        relations: Subspace,
        over: QuadraticAlgebraPresentation,
    ) -> Result<Self> {
        if relations.ambient_dim() != h_dim * over.v_dim {
            return Err(Error::DimensionMismatch(format!(
                "module relations live in dimension {}, expected {}",
                relations.ambient_dim(),
                h_dim * over.v_dim
            )));
        }
        Ok(Self {
            h_dim,
            relations,
            over,
        })
    }

    /// `H ⊗ A`, no relations.
    pub fn free(h_dim: usize, over: QuadraticAlgebraPresentation) -> Self {
        let f = over.field();
        let n = over.v_dim;
        Self {
            h_dim,
            relations: Subspace::zero(f, h_dim * n),
            over,
        }
    }

    /// `H` with trivial action: `K = H ⊗ V`.
    pub fn trivial(h_dim: usize, over: QuadraticAlgebraPresentation) -> Self {
        let f = over.field();
        let n = over.v_dim;
        Self {
            h_dim,
            relations: Subspace::full(f, h_dim * n),
            over,
        }
    }
}

/// Degreewise quotients `X_k = (X_{k-1} ⊗ V) / Q_k`. Each basis element of
/// `X_k` is the class of some `x ⊗ v_b`, so it is reached from a basis element
/// of `X_0` by a word in the generators.
struct Tower {
    n: usize,
    dims: Vec<usize>,
    // right multiplication by generators: times[k][x * n + b] = x · v_b in X_{k+1}
    times: Vec<Vec<SparseVec>>,
    // for a basis element of X_k: (basis element of X_0, word)
    words: Vec<Vec<(usize, Vec<usize>)>>,
}

impl Tower {
    /// `relations(k, tower)` returns spanning vectors of `Q_k` inside
    /// `X_{k-1} ⊗ V`, given the tower through degree `k - 1`.
    fn build<F>(
        field: PrimeField,
        base: usize,
        n: usize,
        d: usize,
        budget: usize,
        relations: F,
    ) -> Result<Self>
    where
        F: Fn(usize, &Tower) -> Vec<Vec<u32>>,
    {
        let mut t = Tower {
            n,
            dims: vec![base],
            times: Vec::new(),
            words: vec![(0..base).map(|h| (h, Vec::new())).collect()],
        };
        for k in 1..=d {
            let prev = t.dims[k - 1];
            let width = prev * n;
            if width > budget {
                return Err(Error::BudgetExceeded {
                    degree: k,
                    needed: width,
                    budget,
                });
            }
            let q = Subspace::from_vectors(field, width, &relations(k, &t))?;
            let keep = q.non_pivots();
            let mut position = vec![usize::MAX; width];
            for (i, &c) in keep.iter().enumerate() {
                position[c] = i;
            }
            let times = (0..width)
                .map(|c| {
                    let mut e = vec![0; width];
                    e[c] = 1;
                    q.reduce(&mut e);
                    keep.iter()
                        .enumerate()
                        .filter(|(_, &c)| e[c] != 0)
                        .map(|(i, &c)| (i as u32, e[c]))
                        .collect()
                })
                .collect();
            let words = keep
                .iter()
                .map(|&c| {
                    let (x, b) = (c / n, c % n);
                    let (h, mut w) = t.words[k - 1][x].clone();
                    w.push(b);
                    (h, w)
                })
                .collect();
            t.dims.push(keep.len());
            t.times.push(times);
            t.words.push(words);
            if keep.is_empty() {
                break;
            }
        }
        Ok(t)
    }

    /// `x · v_b` for `x` in `X_k` given in coordinates.
    fn times_generator(
        &self,
        field: PrimeField,
        k: usize,
        x: &[(u32, u32)],
        b: usize,
    ) -> SparseVec {
        let Some(table) = self.times.get(k) else {
            return Vec::new();
        };
        let mut acc = vec![0; self.dims[k + 1]];
        for &(y, c) in x {
            sparse::axpy(field, &mut acc, c, &table[y as usize * self.n + b]);
        }
        sparse::from_dense(&acc)
    }

    /// `x · w` for a word `w`.
    fn times_word(&self, field: PrimeField, k: usize, x: SparseVec, word: &[usize]) -> SparseVec {
        let mut cur = x;
        for (s, &b) in word.iter().enumerate() {
            if k + s + 1 >= self.dims.len() {
                return Vec::new();
            }
            cur = self.times_generator(field, k + s, &cur, b);
        }
        cur
    }

    /// Span of `Σ r_ab (x·v_a) ⊗ v_b` over basis elements `x` of `X_{k-2}`
    /// and relation vectors `r`.
    fn relation_images(&self, field: PrimeField, k: usize, rel: &Subspace) -> Vec<Vec<u32>> {
        let n = self.n;
        let width = self.dims[k - 1] * n;
        let mut out = Vec::new();
        for x in 0..self.dims[k - 2] {
            for r in rel.vectors() {
                let mut v = vec![0; width];
                for (idx, &c) in r.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let (a, b) = (idx / n, idx % n);
                    for &(y, s) in &self.times[k - 2][x * n + a] {
                        let slot = &mut v[y as usize * n + b];
                        *slot = field.mul_add(c, s, *slot);
                    }
                }
                out.push(v);
            }
        }
        out
    }
}

fn algebra_tower(pres: &QuadraticAlgebraPresentation, d: usize, budget: usize) -> Result<Tower> {
    let f = pres.field();
    Tower::build(f, 1, pres.v_dim, d, budget, |k, t| {
        if k == 1 {
            Vec::new()
        } else {
            t.relation_images(f, k, &pres.relations)
        }
    })
}

fn tower_algebra(field: PrimeField, t: &Tower) -> Result<GradedAlgebra> {
    let complete = t.dims.last() == Some(&0);
    GradedAlgebra::from_fn(field, t.dims.clone(), complete, |i, a, j, b| {
        let (_, word) = &t.words[j][b];
        t.times_word(field, i, vec![(a as u32, 1)], word)
    })
}

/// The algebra `{V, R}` through degree `d`; complete once a component vanishes.
pub fn realize_algebra(pres: &QuadraticAlgebraPresentation, d: usize) -> Result<GradedAlgebra> {
    realize_algebra_with_budget(pres, d, REALIZE_BUDGET)
}

pub fn realize_algebra_with_budget(
    pres: &QuadraticAlgebraPresentation,
    d: usize,
    budget: usize,
) -> Result<GradedAlgebra> {
    let t = algebra_tower(pres, d, budget)?;
    tower_algebra(pres.field(), &t)
}

/// The module `⟨H, K⟩` over the realization of its algebra, through degree `d`.
pub fn realize_module(pres: &QuadraticModulePresentation, d: usize) -> Result<GradedModule> {
    let f = pres.over.field();
    let at = algebra_tower(&pres.over, d, REALIZE_BUDGET)?;
    let algebra = Arc::new(tower_algebra(f, &at)?);
    let mt = Tower::build(f, pres.h_dim, pres.over.v_dim, d, REALIZE_BUDGET, |k, t| {
        if k == 1 {
            pres.relations.vectors().map(<[u32]>::to_vec).collect()
        } else {
            t.relation_images(f, k, &pres.over.relations)
        }
    })?;
    let complete = mt.dims.last() == Some(&0);
    GradedModule::from_fn(algebra, 0, mt.dims.clone(), complete, |j, m, i, a| {
        let (_, word) = &at.words[i][a];
        mt.times_word(f, j as usize, vec![(m as u32, 1)], word)
    })
}

/// `{V*, R^⊥}`.
pub fn quadratic_dual_algebra(pres: &QuadraticAlgebraPresentation) -> QuadraticAlgebraPresentation {
    let n2 = pres.v_dim * pres.v_dim;
    let perp = annihilator(&pres.relations, &FpMatrix::identity(pres.field(), n2)).unwrap();
    QuadraticAlgebraPresentation {
        v_dim: pres.v_dim,
        relations: perp,
    }
}

/// `⟨H*, K^⊥⟩` over the dual algebra.
pub fn quadratic_dual_module(pres: &QuadraticModulePresentation) -> QuadraticModulePresentation {
    let w = pres.h_dim * pres.over.v_dim;
    let perp = annihilator(&pres.relations, &FpMatrix::identity(pres.over.field(), w)).unwrap();
    QuadraticModulePresentation {
        h_dim: pres.h_dim,
        relations: perp,
        over: quadratic_dual_algebra(&pres.over),
    }
}

/// `qA = {A_1, ker(A_1 ⊗ A_1 → A_2)}`, after checking generation in degree 1.
pub fn quadratic_part_algebra(a: &GradedAlgebra) -> Result<QuadraticAlgebraPresentation> {
    if let Some(k) = a.first_degree_not_generated() {
        return Err(Error::NotDegreeOneGenerated(k));
    }
    let n = if a.known(1) { a.dim(1) } else { 0 };
    let relations = if a.known(2) {
        a.product_matrix(1, 1).kernel_basis()
    } else {
        Subspace::zero(a.field(), n * n)
    };
    Ok(QuadraticAlgebraPresentation {
        v_dim: n,
        relations,
    })
}

/// `q_A M = ⟨M_0, ker(M_0 ⊗ A_1 → M_1)⟩` for a module starting in degree 0.
pub fn quadratic_part_module(m: &GradedModule) -> Result<QuadraticModulePresentation> {
    match m.lowest_degree() {
        Some(0) => {}
        Some(d) => return Err(Error::LowestDegreeNotZero(d)),
        None => return Err(Error::LowestDegreeNotZero(m.top() + 1)),
    }
    let over = quadratic_part_algebra(m.algebra())?;
    let relations = m.action_matrix(0, 1).kernel_basis();
    Ok(QuadraticModulePresentation {
        h_dim: m.dim(0),
        relations,
        over,
    })
}

/// An ideal `I` of an exterior algebra generated by `R2 ⊆ Λ²`, with `Λ/I`.
#[derive(Clone, Debug)]
pub struct ExteriorIdeal {
    pub lambda: Arc<GradedAlgebra>,
    pub submodule: Submodule,
    /// `I` as a right `Λ`-module, components from degree 0.
    pub module: GradedModule,
    pub quotient: GradedAlgebra,
}

pub fn ideal_in_exterior(lambda: Arc<GradedAlgebra>, r2: &Subspace) -> Result<ExteriorIdeal> {
    if !lambda.known(2) || r2.ambient_dim() != lambda.dim(2) {
        return Err(Error::DimensionMismatch(format!(
            "degree-2 generators of length {}",
            r2.ambient_dim()
        )));
    }
    let regular = GradedModule::regular(lambda.clone());
    let gens: Vec<(i32, Vec<u32>)> = r2.vectors().map(|v| (2, v.to_vec())).collect();
    let submodule = Submodule::generated_by(&regular, &gens)?;
    let module = submodule.to_module(&regular)?;
    let quotient = quotient_algebra(&lambda, &submodule)?;
    Ok(ExteriorIdeal {
        lambda,
        submodule,
        module,
        quotient,
    })
}
