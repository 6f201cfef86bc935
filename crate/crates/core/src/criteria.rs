//! Decision procedures on top of the homology tables: quadraticity and
//! Koszulity up to a truncation, cup-product surjectivity, the five-term
//! dimension count, the two-route check of the vanishing hypothesis
//! `H_{i,i+3}(Λ(V), I) = 0`, and surjectivity of duals of monomorphisms.

use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fplinalg::{annihilator, FpMatrix, PrimeField, Subspace};
use crate::graded::{direct_sum, shift, GradedAlgebra, GradedModule, Submodule};
use crate::homology::{homology_dim, homology_table, koszul_complex_tor};
use crate::monomial::{
    exterior_algebra, linear_syzygy_ambient, subsets, symmetric_algebra, syzygy_submodule,
};
use crate::quadratic::{
    ideal_in_exterior, quadratic_dual_algebra, quadratic_part_module, realize_algebra,
    QuadraticModulePresentation,
};

/// Homology cells serialize as `{"i", "j", "dim"}` objects.
#[derive(Serialize)]
struct CellRef {
    i: usize,
    j: i32,
    dim: usize,
}

fn ser_cells<S: Serializer>(
    v: &[(usize, i32, usize)],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|&(i, j, dim)| CellRef { i, j, dim }))
}

fn ser_cell<S: Serializer>(
    v: &Option<(usize, i32, usize)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    v.map(|(i, j, dim)| CellRef { i, j, dim }).serialize(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KoszulVerdict {
    KoszulUpTo,
    DefectsFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KoszulReport {
    pub i_max: usize,
    pub j_max: i32,
    /// Off-diagonal nonzero cells `(i, j, dim)`.
    #[serde(serialize_with = "ser_cells")]
    pub defects: Vec<(usize, i32, usize)>,
    pub verdict: KoszulVerdict,
}

/// Scans `H_{i,j}(A, M)` for `i <= i_max`, `j <= j_max` and collects the
/// nonzero cells with `i != j`.
///
/// Rows whose only live cell is the diagonal one are skipped: for `M`
/// starting in degree 0 the last row `i = j_max` needs the most expensive
/// part of a resolution and cannot hold a defect.
pub fn koszul_check(
    a: &GradedAlgebra,
    m: &GradedModule,
    i_max: usize,
    j_max: i32,
) -> Result<KoszulReport> {
    let rows = match m.lowest_degree() {
        Some(0) if j_max >= 1 => i_max.min(j_max as usize - 1),
        _ => i_max,
    };
    let table = homology_table(a, m, rows, j_max)?;
    let defects: Vec<_> = table.nonzero().filter(|&(i, j, _)| i as i32 != j).collect();
    let verdict = if defects.is_empty() {
        KoszulVerdict::KoszulUpTo
    } else {
        KoszulVerdict::DefectsFound
    };
    Ok(KoszulReport {
        i_max,
        j_max,
        defects,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticityReport {
    pub quadratic: bool,
    /// First nonzero cell `(i, j, dim)` off the allowed positions.
    #[serde(serialize_with = "ser_cell")]
    pub witness: Option<(usize, i32, usize)>,
    pub checked_up_to: i32,
}

fn first_off_diagonal(
    a: &GradedAlgebra,
    m: &GradedModule,
    rows: &[usize],
    d: i32,
) -> Result<QuadraticityReport> {
    for &i in rows {
        for j in 0..=d {
            if j == i as i32 {
                continue;
            }
            let dim = homology_dim(a, m, i, j)?;
            if dim > 0 {
                return Ok(QuadraticityReport {
                    quadratic: false,
                    witness: Some((i, j, dim)),
                    checked_up_to: d,
                });
            }
        }
    }
    Ok(QuadraticityReport {
        quadratic: true,
        witness: None,
        checked_up_to: d,
    })
}

/// `M` is quadratic iff `H_{0,j}(A,M) = 0` for `j != 0` and `H_{1,j}(A,M) = 0`
/// for `j != 1`; checked for `j <= d`.
pub fn is_quadratic_module(
    a: &GradedAlgebra,
    m: &GradedModule,
    d: i32,
) -> Result<QuadraticityReport> {
    match m.lowest_degree() {
        Some(0) | None => {}
        Some(low) => return Err(Error::LowestDegreeNotZero(low)),
    }
    first_off_diagonal(a, m, &[0, 1], d)
}

/// `A` is quadratic iff `H_{1,j}(A,k) = 0` for `j != 1` and `H_{2,j}(A,k) = 0`
/// for `j != 2`; checked for `j <= d`.
pub fn is_quadratic_algebra(a: &Arc<GradedAlgebra>, d: i32) -> Result<QuadraticityReport> {
    let k = GradedModule::trivial(a.clone());
    first_off_diagonal(a, &k, &[1, 2], d)
}

/// Whether `N_2 = N_1·Λ^1 + N_0·Λ^2`, by a rank computation.
pub fn cup_surjectivity_check(n: &GradedModule) -> Result<bool> {
    if let Some(low) = n.lowest_degree() {
        if low < 0 {
            return Err(Error::LowestDegreeNotZero(low));
        }
    }
    if !n.known(2) {
        return Err(Error::TruncationInsufficient { i: 0, j: 2 });
    }
    Ok(n.decomposables(2).rank() == n.dim(2))
}

/// Dimensions in the exact sequence
/// `0 → H_{1,2}(Λ,N) → H_{2,4}(Λ,B) → ker d → H_{0,2}(Λ,N) → 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiveTermDims {
    pub h12_n: usize,
    pub h24_b: usize,
    pub h02_n: usize,
    pub derived_ker_d: i64,
    pub h14_b: usize,
    /// Set when `H_{1,4}(Λ, B) != 0`, i.e. the kernel of `Λ → B` is not
    /// generated in degree 2 and the sequence does not apply as stated.
    pub h14_warning: bool,
}

pub fn five_term_dims(b: &GradedModule, n: &GradedModule) -> Result<FiveTermDims> {
    let lambda = b.algebra();
    if !n.is_over(lambda) {
        return Err(Error::AlgebraMismatch);
    }
    let h12_n = homology_dim(lambda, n, 1, 2)?;
    let h24_b = homology_dim(lambda, b, 2, 4)?;
    let h02_n = homology_dim(lambda, n, 0, 2)?;
    let h14_b = homology_dim(lambda, b, 1, 4)?;
    Ok(FiveTermDims {
        h12_n,
        h24_b,
        h02_n,
        derived_ker_d: h24_b as i64 - h12_n as i64 + h02_n as i64,
        h14_b,
        h14_warning: h14_b != 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Route {
    Direct,
    DualViaJ,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TheoremBVerdict {
    Passes,
    Fails,
    NotQuadraticPrecondition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteOutcome {
    /// Nonzero cells `(i, j, dim)`: `H_{i,j}(Λ, I)` with `j = i + 3` on the
    /// direct route, `Tor_2(J/⟨W*⟩)_j` with `j > 4` on the dual route.
    #[serde(serialize_with = "ser_cells")]
    pub failures: Vec<(usize, i32, usize)>,
    pub first_failing_degree: Option<i32>,
}

impl RouteOutcome {
    fn new(failures: Vec<(usize, i32, usize)>) -> Self {
        let first_failing_degree = failures.iter().map(|c| c.1).min();
        Self {
            failures,
            first_failing_degree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremBReport {
    pub quadratic_ok: bool,
    #[serde(serialize_with = "ser_cell")]
    pub quadratic_witness: Option<(usize, i32, usize)>,
    pub vanishing_checked_up_to: usize,
    pub route: Route,
    pub direct: Option<RouteOutcome>,
    pub dual: Option<RouteOutcome>,
    /// Present when both routes ran: same verdict and same first failing degree.
    pub agreement: Option<bool>,
    pub verdict: TheoremBVerdict,
}

/// The ideal `I ⊆ Λ(F_p^n)` generated by `R2`, and the check that `I(2)` is
/// quadratic and `H_{i,i+3}(Λ, I) = 0` for `i + 3 <= d`.
pub fn theorem_b_check(
    n: usize,
    field: PrimeField,
    r2: &Subspace,
    d: usize,
    route: Route,
) -> Result<TheoremBReport> {
    if d < 4 {
        return Err(Error::TruncationInsufficient { i: 0, j: 4 });
    }
    let lambda = Arc::new(exterior_algebra(n, field, d));
    let ideal = ideal_in_exterior(lambda.clone(), r2)?;
    let shifted = shift(&ideal.module, 2);
    let q = is_quadratic_module(&lambda, &shifted, d as i32 - 2)?;
    let direct = match route {
        Route::Direct | Route::Both => Some(direct_route(&lambda, &ideal.module, d)?),
        Route::DualViaJ => None,
    };
    let dual = match route {
        Route::DualViaJ | Route::Both => {
            Some(dual_route(n, field, ideal.submodule.space(2).unwrap(), d)?)
        }
        Route::Direct => None,
    };
    let agreement = match (&direct, &dual) {
        (Some(x), Some(y)) => {
            Some(!q.quadratic || x.first_failing_degree == y.first_failing_degree)
        }
        _ => None,
    };
    let primary = direct.as_ref().or(dual.as_ref()).unwrap();
    let verdict = if !q.quadratic {
        TheoremBVerdict::NotQuadraticPrecondition
    } else if primary.failures.is_empty() {
        TheoremBVerdict::Passes
    } else {
        TheoremBVerdict::Fails
    };
    Ok(TheoremBReport {
        quadratic_ok: q.quadratic,
        quadratic_witness: q.witness,
        vanishing_checked_up_to: d,
        route,
        direct,
        dual,
        agreement,
        verdict,
    })
}

fn direct_route(lambda: &GradedAlgebra, ideal: &GradedModule, d: usize) -> Result<RouteOutcome> {
    let mut failures = Vec::new();
    for i in 0..=d - 3 {
        let j = i as i32 + 3;
        let dim = homology_dim(lambda, ideal, i, j)?;
        if dim > 0 {
            failures.push((i, j, dim));
        }
    }
    Ok(RouteOutcome::new(failures))
}

/// `W* ⊆ J_2 ⊆ V*⊗V*`: the functionals vanishing on `I_2` under
/// `⟨φ, e_a∧e_b⟩ = φ(e_a ⊗ e_b)` for `a < b`.
pub fn w_star(n: usize, field: PrimeField, i2: &Subspace) -> Result<Subspace> {
    let pairs = subsets(n, 2);
    let mut pairing = FpMatrix::zeros(field, pairs.len(), n * n);
    for (row, &s) in pairs.iter().enumerate() {
        let a = s.trailing_zeros() as usize;
        let b = 63 - s.leading_zeros() as usize;
        pairing.set(row, a * n + b, 1);
    }
    let s = Arc::new(symmetric_algebra(n, field, 2));
    let j2 = crate::monomial::linear_multiplication(&s, 2).kernel_basis();
    annihilator(i2, &pairing)?.intersection(&j2)
}

/// `J / ⟨W*⟩` over `S(V*)`, through degree `d`.
pub fn j_mod_w_star(n: usize, field: PrimeField, i2: &Subspace, d: usize) -> Result<GradedModule> {
    let s = Arc::new(symmetric_algebra(n, field, d));
    let ambient = linear_syzygy_ambient(s);
    let j = syzygy_submodule(&ambient)?;
    let jmod = j.to_module(&ambient)?;
    let w = w_star(n, field, i2)?;
    let gens: Vec<(i32, Vec<u32>)> = w.vectors().map(|v| (2, v.to_vec())).collect();
    let generated = Submodule::generated_by(&ambient, &gens)?;
    let spaces = (0..=ambient.top())
        .map(|k| {
            let jk = j.space(k).unwrap();
            let coords: Vec<Vec<u32>> = generated
                .space(k)
                .unwrap()
                .vectors()
                .map(|v| jk.coordinates(v).ok_or(Error::ContainmentViolation))
                .collect::<Result<_>>()?;
            Subspace::from_vectors(field, jk.dim(), &coords)
        })
        .collect::<Result<Vec<_>>>()?;
    Submodule::from_spaces(&jmod, spaces)?.quotient(&jmod)
}

fn dual_route(n: usize, field: PrimeField, i2: &Subspace, d: usize) -> Result<RouteOutcome> {
    let q = j_mod_w_star(n, field, i2, d)?;
    let s = q.algebra().clone();
    let mut failures = Vec::new();
    for j in 5..=d as i32 {
        let dim = koszul_complex_tor(&s, &q, 2, j)?;
        if dim > 0 {
            failures.push((2, j, dim));
        }
    }
    Ok(RouteOutcome::new(failures))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualMonoReport {
    /// Whether `f^!` is onto in each degree `0..=d`.
    pub surjective: Vec<bool>,
    pub kernel_dims: Vec<usize>,
    pub kernel_generated_in_degree_0: bool,
    pub coker_f0_dim: usize,
    pub coker_f1_dim: usize,
}

/// For a degreewise injective map `f: M → N` of quadratic modules (matrices
/// `N_k x M_k` for `k = 0..=d`), checks that the dual map `f^!: N^! → M^!` is
/// onto and that its kernel is generated in degree 0.
pub fn dual_mono_check(
    m: &GradedModule,
    n: &GradedModule,
    f: &[FpMatrix],
    d: usize,
) -> Result<DualMonoReport> {
    if !n.is_over(m.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    if f.len() <= d.max(1) {
        return Err(Error::DimensionMismatch(format!(
            "{} maps for degrees 0..={d}",
            f.len()
        )));
    }
    for (k, fk) in f.iter().enumerate() {
        let k = k as i32;
        if fk.rows() != n.dim(k) || fk.cols() != m.dim(k) {
            return Err(Error::DimensionMismatch(format!("map in degree {k}")));
        }
        if fk.rank() < m.dim(k) {
            return Err(Error::InputNotMonomorphism(k));
        }
    }
    check_module_map(m, n, f)?;
    let pm = quadratic_part_module(m)?;
    let pn = quadratic_part_module(n)?;
    let field = m.field();
    let dual_alg = Arc::new(realize_algebra(&quadratic_dual_algebra(&pm.over), d)?);
    let (fm, rm) = free_with_relations(&dual_alg, &pm)?;
    let (fnn, rn) = free_with_relations(&dual_alg, &pn)?;
    let f0 = &f[0];
    let d = d
        .min(fm.top().max(0) as usize)
        .min(fnn.top().max(0) as usize);
    let mut surjective = Vec::new();
    let mut kernel_dims = Vec::new();
    let mut preimages = Vec::new();
    for k in 0..=d as i32 {
        let dk = dual_alg.dim(k as usize);
        // f_0^T ⊗ id : N_0* ⊗ A^!_k → M_0* ⊗ A^!_k, copy-major coordinates
        let mut phi = FpMatrix::zeros(field, fm.dim(k), fnn.dim(k));
        for hn in 0..f0.rows() {
            for hm in 0..f0.cols() {
                let c = f0.get(hn, hm);
                if c != 0 {
                    for x in 0..dk {
                        phi.set(hm * dk + x, hn * dk + x, c);
                    }
                }
            }
        }
        let rmk = rm.space(k).unwrap();
        let rnk = rn.space(k).unwrap();
        let image = phi.column_space().sum(rmk)?;
        surjective.push(image.dim() == fm.dim(k));
        // preimage of R_M under phi: kernel of (F_N → F_M / R_M)
        let mut reduced = Vec::with_capacity(fnn.dim(k) * (fm.dim(k) - rmk.dim()));
        for c in 0..fnn.dim(k) {
            reduced.extend(rmk.quotient_coordinates(&phi.column(c)));
        }
        let q = FpMatrix::from_vec(field, fnn.dim(k), fm.dim(k) - rmk.dim(), reduced)?.transpose();
        let pre = q.kernel_basis();
        kernel_dims.push(pre.dim() - rnk.dim());
        preimages.push(pre);
    }
    let mut gens: Vec<(i32, Vec<u32>)> = preimages[0].vectors().map(|v| (0, v.to_vec())).collect();
    if let Some(r1) = rn.space(1) {
        gens.extend(r1.vectors().map(|v| (1, v.to_vec())));
    }
    let generated = Submodule::generated_by(&fnn, &gens)?;
    let kernel_generated_in_degree_0 =
        (0..=d).all(|k| generated.space(k as i32).unwrap() == &preimages[k]);
    Ok(DualMonoReport {
        surjective,
        kernel_dims,
        kernel_generated_in_degree_0,
        coker_f0_dim: n.dim(0) - f[0].rank(),
        coker_f1_dim: n.dim(1) - f[1].rank(),
    })
}

fn check_module_map(m: &GradedModule, n: &GradedModule, f: &[FpMatrix]) -> Result<()> {
    let a = m.algebra();
    for j in 0..f.len() {
        for i in 1..f.len() - j {
            for x in 0..m.dim(j as i32) {
                for y in 0..a.dim(i) {
                    let mut e = vec![0; a.dim(i)];
                    e[y] = 1;
                    let lhs =
                        f[i + j].mul_vec(&m.act_vec(j as i32, &unit(m.dim(j as i32), x), i, &e));
                    let rhs = n.act_vec(j as i32, &f[j].column(x), i, &e);
                    if lhs != rhs {
                        return Err(Error::InvalidStructure(format!(
                            "map does not commute with the action in degree {j}"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut e = vec![0; n];
    e[k] = 1;
    e
}

/// `H* ⊗ A^!` and the submodule generated by `K^⊥` in degree 1.
fn free_with_relations(
    dual_alg: &Arc<GradedAlgebra>,
    pres: &QuadraticModulePresentation,
) -> Result<(GradedModule, Submodule)> {
    let mut free = GradedModule::zero(dual_alg.clone());
    for _ in 0..pres.h_dim {
        free = direct_sum(&free, &GradedModule::regular(dual_alg.clone()))?;
    }
    let perp = annihilator(
        &pres.relations,
        &FpMatrix::identity(pres.relations.field(), pres.relations.ambient_dim()),
    )?;
    let gens: Vec<(i32, Vec<u32>)> = perp.vectors().map(|v| (1, v.to_vec())).collect();
    let rel = Submodule::generated_by(&free, &gens)?;
    Ok((free, rel))
}
