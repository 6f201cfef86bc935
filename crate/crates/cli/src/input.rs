//! The job document and the objects it describes.

use std::collections::HashMap;
use std::sync::Arc;

use koszul_core::fplinalg::{PrimeField, Subspace};
use koszul_core::graded::{shift, GradedAlgebra, GradedModule};
use koszul_core::groups::{psi_and_kernel, GroupExpr, PsiData};
use koszul_core::monomial::{exterior_algebra, subsets, symmetric_algebra};
use koszul_core::quadratic::{ideal_in_exterior, ExteriorIdeal};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub p: u64,
    pub truncation: Option<usize>,
    pub algebra: Option<AlgebraInput>,
    pub module: Option<ModuleInput>,
    pub ideal: Option<IdealInput>,
    pub group: Option<String>,
    pub search: Option<SearchInput>,
    /// Second module for `five-term`: `module` is B, `n_module` is N.
    pub n_module: Option<ModuleInput>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum AlgebraInput {
    Exterior(usize),
    Symmetric(usize),
    Explicit(ExplicitAlgebra),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAlgebra {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub complete: bool,
    /// Row-major `dim(i+j) x dim(i)dim(j)` matrices, column `a * dim(j) + b`.
    /// Missing blocks are zero.
    pub products: Vec<Block>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Block {
    pub i: i32,
    pub j: usize,
    pub matrix: Vec<i64>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum ModuleInput {
    Regular,
    Trivial,
    /// `I(2)` for the `ideal` of the document, or `(ker ψ)(2)` for a group.
    Ideal,
    /// `Λ/I`, or `H•(G)` for a group.
    Quotient,
    Explicit(ExplicitModule),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitModule {
    #[serde(default)]
    pub start: i32,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub complete: bool,
    /// `i` is the module degree, `j` the algebra degree; row-major
    /// `dim M_{i+j} x dim M_i dim A_j`, column `m * dim A_j + a`. Missing
    /// blocks are zero.
    pub actions: Vec<Block>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct IdealInput {
    pub n: usize,
    pub generators: Vec<Generator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Generator {
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub c: i64,
    pub m: Vec<usize>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchInput {
    pub n: usize,
    pub r: usize,
}

pub fn parse_document(text: &str) -> Result<Document, CliError> {
    // serde_json messages end with "at line L column C"
    serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))
}

pub fn field(doc: &Document) -> Result<PrimeField, CliError> {
    PrimeField::new(doc.p)
        .map_err(|_| CliError::Input(format!("p = {} is not a prime below 2^16", doc.p)))
}

pub fn parse_group(text: &str) -> Result<GroupExpr, CliError> {
    text.parse().map_err(|e| match e {
        koszul_core::Error::Parse { pos, msg } => {
            CliError::Input(format!("group expression, position {pos}: {msg}"))
        }
        other => CliError::Core(other),
    })
}

impl IdealInput {
    /// The degree-2 part `R2 ⊆ Λ²(F_p^n)` spanned by the generators.
    pub fn r2(&self, field: PrimeField) -> Result<Subspace, CliError> {
        let pairs = subsets(self.n, 2);
        let mut gens = Vec::with_capacity(self.generators.len());
        for (g, gen) in self.generators.iter().enumerate() {
            let mut v = vec![0u32; pairs.len()];
            for t in &gen.terms {
                let [a, b] = t.m[..] else {
                    return Err(CliError::Input(format!(
                        "generator {g}: only degree-2 monomials are supported"
                    )));
                };
                if a >= b || b >= self.n {
                    return Err(CliError::Input(format!(
                        "generator {g}: monomial {:?} must be increasing indices below {}",
                        t.m, self.n
                    )));
                }
                let idx = pairs
                    .iter()
                    .position(|&s| s == (1 << a) | (1 << b))
                    .unwrap();
                v[idx] = field.add(v[idx], field.from_i64(t.c));
            }
            gens.push(v);
        }
        Ok(Subspace::from_vectors(field, pairs.len(), &gens)?)
    }

    pub fn from_r2(n: usize, r2: &Subspace) -> Self {
        let pairs = subsets(n, 2);
        let generators = r2
            .vectors()
            .map(|v| Generator {
                terms: v
                    .iter()
                    .enumerate()
                    .filter(|e| *e.1 != 0)
                    .map(|(k, &c)| Term {
                        c: c as i64,
                        m: vec![
                            pairs[k].trailing_zeros() as usize,
                            63 - pairs[k].leading_zeros() as usize,
                        ],
                    })
                    .collect(),
            })
            .collect();
        Self { n, generators }
    }
}

fn block_map(blocks: &[Block]) -> HashMap<(i32, usize), &[i64]> {
    blocks.iter().map(|b| ((b.i, b.j), &b.matrix[..])).collect()
}

fn explicit_algebra(field: PrimeField, e: &ExplicitAlgebra) -> Result<GradedAlgebra, CliError> {
    let blocks = block_map(&e.products);
    let dims = &e.dims;
    for b in &e.products {
        let (i, j) = (b.i as usize, b.j);
        if b.i < 1 || j < 1 || i + j >= dims.len() {
            return Err(CliError::Input(format!(
                "product block ({}, {}) out of range",
                b.i, b.j
            )));
        }
        if b.matrix.len() != dims[i + j] * dims[i] * dims[j] {
            return Err(CliError::Input(format!(
                "product block ({i}, {j}) has the wrong size"
            )));
        }
    }
    Ok(GradedAlgebra::from_fn(
        field,
        dims.clone(),
        e.complete,
        |i, a, j, b| {
            let Some(m) = blocks.get(&(i as i32, j)) else {
                return Vec::new();
            };
            let cols = dims[i] * dims[j];
            let col = a * dims[j] + b;
            (0..dims[i + j])
                .filter_map(|r| {
                    let c = field.from_i64(m[r * cols + col]);
                    (c != 0).then_some((r as u32, c))
                })
                .collect()
        },
    )?)
}

fn explicit_module(a: &Arc<GradedAlgebra>, e: &ExplicitModule) -> Result<GradedModule, CliError> {
    let f = a.field();
    let blocks = block_map(&e.actions);
    let dim = |k: i32| -> usize {
        let idx = k - e.start;
        if idx < 0 {
            0
        } else {
            e.dims.get(idx as usize).copied().unwrap_or(0)
        }
    };
    let top = e.start + e.dims.len() as i32 - 1;
    for b in &e.actions {
        if b.i < e.start || b.j < 1 || b.i + b.j as i32 > top || !a.known(b.j) {
            return Err(CliError::Input(format!(
                "action block ({}, {}) out of range",
                b.i, b.j
            )));
        }
        if b.matrix.len() != dim(b.i + b.j as i32) * dim(b.i) * a.dim(b.j) {
            return Err(CliError::Input(format!(
                "action block ({}, {}) has the wrong size",
                b.i, b.j
            )));
        }
    }
    Ok(GradedModule::from_fn(
        a.clone(),
        e.start,
        e.dims.clone(),
        e.complete,
        |i, m, j, x| {
            let Some(mat) = blocks.get(&(i, j)) else {
                return Vec::new();
            };
            let cols = dim(i) * a.dim(j);
            let col = m * a.dim(j) + x;
            (0..dim(i + j as i32))
                .filter_map(|r| {
                    let c = f.from_i64(mat[r * cols + col]);
                    (c != 0).then_some((r as u32, c))
                })
                .collect()
        },
    )?)
}

/// What a document describes: an algebra, and possibly a module over it with
/// its provenance.
pub struct Context {
    pub field: PrimeField,
    pub truncation: usize,
    pub algebra: Arc<GradedAlgebra>,
    pub ideal: Option<ExteriorIdeal>,
    pub group: Option<(GroupExpr, PsiData)>,
}

impl Context {
    pub fn build(doc: &Document, truncation: usize) -> Result<Self, CliError> {
        let field = field(doc)?;
        let given = [
            doc.algebra.is_some(),
            doc.ideal.is_some(),
            doc.group.is_some(),
        ];
        if given.iter().filter(|&&g| g).count() > 1 {
            return Err(CliError::Input(
                "give only one of algebra, ideal, group".into(),
            ));
        }
        if let Some(ideal) = &doc.ideal {
            let lambda = Arc::new(exterior_algebra(ideal.n, field, truncation));
            let ext = ideal_in_exterior(lambda.clone(), &ideal.r2(field)?)?;
            return Ok(Self {
                field,
                truncation,
                algebra: lambda,
                ideal: Some(ext),
                group: None,
            });
        }
        if let Some(text) = &doc.group {
            let expr = parse_group(text)?;
            let data = psi_and_kernel(&expr, field, truncation)?;
            return Ok(Self {
                field,
                truncation,
                algebra: data.lambda.clone(),
                ideal: None,
                group: Some((expr, data)),
            });
        }
        let algebra = match &doc.algebra {
            Some(AlgebraInput::Exterior(n)) => exterior_algebra(*n, field, truncation),
            Some(AlgebraInput::Symmetric(n)) => symmetric_algebra(*n, field, truncation),
            Some(AlgebraInput::Explicit(e)) => explicit_algebra(field, e)?,
            None => {
                return Err(CliError::Input(
                    "the document needs an algebra, ideal or group".into(),
                ))
            }
        };
        Ok(Self {
            field,
            truncation,
            algebra: Arc::new(algebra),
            ideal: None,
            group: None,
        })
    }

    /// The module named by `input`; `None` means the default for the context:
    /// `I(2)` for an ideal, `H•(G)` for a group, `k` otherwise.
    pub fn module(&self, input: Option<&ModuleInput>) -> Result<GradedModule, CliError> {
        let a = &self.algebra;
        let default = match (&self.ideal, &self.group) {
            (Some(_), _) => ModuleInput::Ideal,
            (_, Some(_)) => ModuleInput::Quotient,
            _ => ModuleInput::Trivial,
        };
        Ok(match input.unwrap_or(&default) {
            ModuleInput::Regular => GradedModule::regular(a.clone()),
            ModuleInput::Trivial => GradedModule::trivial(a.clone()),
            ModuleInput::Ideal => match (&self.ideal, &self.group) {
                (Some(i), _) => shift(&i.module, 2),
                (_, Some((_, g))) => shift(&g.kernel_module, 2),
                _ => {
                    return Err(CliError::Input(
                        "module \"ideal\" needs an ideal or a group".into(),
                    ))
                }
            },
            ModuleInput::Quotient => match (&self.ideal, &self.group) {
                (Some(i), _) => i.submodule.quotient(&GradedModule::regular(a.clone()))?,
                (_, Some((_, g))) => g.cohomology_module.clone(),
                _ => {
                    return Err(CliError::Input(
                        "module \"quotient\" needs an ideal or a group".into(),
                    ))
                }
            },
            ModuleInput::Explicit(e) => explicit_module(a, e)?,
        })
    }
}
