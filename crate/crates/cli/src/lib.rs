//! Job runner behind the `koszul` binary: reads a JSON job document, runs one
//! computation from `koszul-core` and renders a JSON report.

pub mod cache;
pub mod error;
pub mod input;
pub mod search;

use std::path::PathBuf;

use koszul_core::criteria::{
    five_term_dims, is_quadratic_algebra, is_quadratic_module, theorem_b_check, KoszulVerdict,
    Route,
};
use koszul_core::graded::GradedModule;
use koszul_core::groups::{free_square_modules, verify_theorem_c, GroupExpr};
use koszul_core::quadratic::{
    quadratic_dual_algebra, quadratic_dual_module, quadratic_part_algebra, quadratic_part_module,
    realize_algebra, realize_module,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{certified_j_max, CellCache};
pub use crate::error::CliError;
use crate::input::{parse_group, Context, Document};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Homology,
    QuadraticCheck,
    KoszulCheck,
    Dual,
    CriterionB,
    FiveTerm,
    Group,
    TheoremC,
    Search,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_degree: Option<usize>,
    pub seed: u64,
    pub count: u64,
    pub jobs: Option<usize>,
    pub route: Route,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            max_degree: None,
            seed: 0,
            count: 100,
            jobs: None,
            route: Route::Direct,
            cache_dir: None,
        }
    }
}

#[derive(Serialize)]
struct Cell {
    i: usize,
    j: i32,
    dim: usize,
}

fn cells(v: impl IntoIterator<Item = (usize, i32, usize)>) -> Vec<Cell> {
    v.into_iter()
        .map(|(i, j, dim)| Cell { i, j, dim })
        .collect()
}

fn truncation(doc: &Document, opts: &Options) -> Result<usize, CliError> {
    let d = opts.max_degree.or(doc.truncation).ok_or_else(|| {
        CliError::Input("no truncation: set \"truncation\" or --max-degree".into())
    })?;
    if d < 2 {
        return Err(CliError::Input(format!(
            "truncation must be at least 2, got {d}"
        )));
    }
    Ok(d)
}

/// Runs `cmd` on `doc` and returns the pretty-printed report. The output
/// depends only on the document and the options, not on `jobs`.
pub fn run(cmd: Command, doc: &Document, opts: &Options) -> Result<String, CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = opts.jobs {
        pool = pool.num_threads(j.max(1));
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    let value = pool.install(|| dispatch(cmd, doc, opts))?;
    Ok(serde_json::to_string_pretty(&value).expect("reports serialize"))
}

fn dispatch(cmd: Command, doc: &Document, opts: &Options) -> Result<Value, CliError> {
    let d = truncation(doc, opts)?;
    let cache = opts.cache_dir.as_deref().map(CellCache::open).transpose()?;
    match cmd {
        Command::Homology | Command::KoszulCheck => {
            let ctx = Context::build(doc, d)?;
            let m = ctx.module(doc.module.as_ref())?;
            let a = &ctx.algebra;
            let j_max = certified_j_max(a, &m, d, d as i32).ok_or(
                koszul_core::Error::TruncationInsufficient {
                    i: d,
                    j: m.start().min(0),
                },
            )?;
            let table = cache::table(a, &m, d, j_max, cache.as_ref())?;
            let mut out = json!({
                "table": cells(table.iter().copied().filter(|c| c.2 > 0)),
                "certified": { "i_max": d, "j_max": j_max },
            });
            if cmd == Command::KoszulCheck {
                let defects: Vec<_> = table
                    .iter()
                    .copied()
                    .filter(|c| c.2 > 0 && c.0 as i32 != c.1)
                    .collect();
                let verdict = if defects.is_empty() {
                    KoszulVerdict::KoszulUpTo
                } else {
                    KoszulVerdict::DefectsFound
                };
                out["defects"] = json!(cells(defects));
                out["verdict"] = json!(verdict);
            }
            Ok(out)
        }
        Command::QuadraticCheck => {
            let ctx = Context::build(doc, d)?;
            let a = &ctx.algebra;
            let plain_algebra = doc.module.is_none() && ctx.ideal.is_none() && ctx.group.is_none();
            let report = if plain_algebra {
                let k = GradedModule::trivial(a.clone());
                let j = certified_j_max(a, &k, 2, d as i32).unwrap_or(0);
                is_quadratic_algebra(a, j)?
            } else {
                let m = ctx.module(doc.module.as_ref())?;
                let j = certified_j_max(a, &m, 1, d as i32).unwrap_or(0);
                is_quadratic_module(a, &m, j)?
            };
            let verdict = if report.quadratic {
                "Quadratic"
            } else {
                "NotQuadratic"
            };
            Ok(json!({
                "quadratic": report.quadratic,
                "witness": report.witness.map(|(i, j, dim)| Cell { i, j, dim }),
                "checked_up_to": report.checked_up_to,
                "verdict": verdict,
            }))
        }
        Command::Dual => {
            let ctx = Context::build(doc, d)?;
            let qa = quadratic_part_algebra(&ctx.algebra)?;
            let qa_dual = quadratic_dual_algebra(&qa);
            let dual = realize_algebra(&qa_dual, d)?;
            let mut out = json!({
                "algebra": {
                    "v_dim": qa.v_dim,
                    "relations_dim": qa.relations.dim(),
                    "dual_relations_dim": qa_dual.relations.dim(),
                    "dual_dims": dual.hilbert_function(),
                    "dual_complete": dual.is_complete(),
                }
            });
            if doc.module.is_some() || ctx.ideal.is_some() || ctx.group.is_some() {
                let m = ctx.module(doc.module.as_ref())?;
                let qm = quadratic_part_module(&m)?;
                let qm_dual = quadratic_dual_module(&qm);
                let dual = realize_module(&qm_dual, d)?;
                out["module"] = json!({
                    "h_dim": qm.h_dim,
                    "relations_dim": qm.relations.dim(),
                    "dual_relations_dim": qm_dual.relations.dim(),
                    "dual_dims": dual.hilbert_function(),
                    "dual_complete": dual.is_complete(),
                });
            }
            Ok(out)
        }
        Command::CriterionB => {
            let ideal = doc
                .ideal
                .as_ref()
                .ok_or_else(|| CliError::Input("criterion-b needs an ideal".into()))?;
            let field = input::field(doc)?;
            if d < 4 {
                return Err(CliError::Input("criterion-b needs truncation >= 4".into()));
            }
            let report = theorem_b_check(ideal.n, field, &ideal.r2(field)?, d, opts.route)?;
            Ok(json!(report))
        }
        Command::FiveTerm => {
            let (b, n) = match (&doc.group, &doc.n_module) {
                (_, Some(n_input)) => {
                    let ctx = Context::build(doc, d)?;
                    (ctx.module(doc.module.as_ref())?, ctx.module(Some(n_input))?)
                }
                (Some(text), None) => {
                    let expr = parse_group(text)?;
                    let square = GroupExpr::Product(
                        Box::new(GroupExpr::Free(2)),
                        Box::new(GroupExpr::Free(2)),
                    );
                    if expr != square {
                        return Err(CliError::Input(
                            "N is only known for (F(2) x F(2)); supply \"n_module\" otherwise"
                                .into(),
                        ));
                    }
                    free_square_modules(input::field(doc)?)?
                }
                (None, None) => {
                    return Err(CliError::Input(
                        "five-term needs a group or an n_module".into(),
                    ))
                }
            };
            Ok(json!(five_term_dims(&b, &n)?))
        }
        Command::Group => {
            if doc.group.is_none() {
                return Err(CliError::Input("group needs a group expression".into()));
            }
            let ctx = Context::build(doc, d)?;
            let (expr, data) = ctx.group.as_ref().unwrap();
            Ok(json!({
                "group": expr.to_string(),
                "h1_dim": data.lambda.dim(1),
                "cohomology_dims": data.cohomology.hilbert_function(),
                "kernel_dims": data.kernel.dims(),
            }))
        }
        Command::TheoremC => {
            let text = doc
                .group
                .as_ref()
                .ok_or_else(|| CliError::Input("theorem-c needs a group expression".into()))?;
            let expr = parse_group(text)?;
            let report = verify_theorem_c(&expr, input::field(doc)?, d)?;
            Ok(json!({
                "group": expr.to_string(),
                "certified": { "i_max": report.i_max, "j_max": report.j_max },
                "defects": cells(report.defects.iter().copied()),
                "verdict": report.verdict,
            }))
        }
        Command::Search => {
            let s = doc.search.as_ref().ok_or_else(|| {
                CliError::Input("search needs {\"search\": {\"n\": .., \"r\": ..}}".into())
            })?;
            let out = search::search(
                input::field(doc)?,
                s.n,
                s.r,
                d,
                opts.seed,
                opts.count,
                opts.route,
            )?;
            Ok(json!(out))
        }
    }
}
