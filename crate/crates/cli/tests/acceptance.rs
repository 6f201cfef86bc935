//! Acceptance run: one line per criterion, `PASS` or `FAIL`, with the wall
//! time against its limit. Exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use koszul_cli::search::{sample_r2, search};
use koszul_core::criteria::{
    five_term_dims, is_quadratic_module, theorem_b_check, KoszulVerdict, Route, TheoremBVerdict,
};
use koszul_core::fplinalg::{PrimeField, Subspace};
use koszul_core::graded::{shift, GradedModule};
use koszul_core::groups::{
    demushkin_alpha, free_square_modules, psi_and_kernel, verify_theorem_c, GroupExpr,
};
use koszul_core::homology::{homology_dim, homology_table};
use koszul_core::monomial::{binomial, exterior_algebra, symmetric_algebra};
use koszul_core::quadratic::{ideal_in_exterior, quadratic_part_module, realize_module};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn f(p: u64) -> PrimeField {
    PrimeField::new(p).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn free_group_oracle() -> Check {
    for p in [2, 3, 5] {
        let data = psi_and_kernel(&GroupExpr::Free(2), f(p), 8).map_err(|e| e.to_string())?;
        let t = homology_table(&data.lambda, &data.cohomology_module, 5, 8)
            .map_err(|e| e.to_string())?;
        for (i, j, dim) in t.cells() {
            // H_{i,i+1} = S^{i-1}(F_p^2), plus k in the corner
            let want = match (i, j) {
                (0, 0) => 1,
                (i, j) if i >= 1 && j == i as i32 + 1 => i,
                _ => 0,
            };
            ensure!(dim == want, "p={p}: H_{{{i},{j}}} = {dim}, expected {want}");
        }
    }
    Ok("p = 2, 3, 5; i <= 5, j <= 8".into())
}

fn free_square() -> Check {
    for p in [2, 3, 5] {
        let (b, n) = free_square_modules(f(p)).map_err(|e| e.to_string())?;
        let h24 = homology_dim(b.algebra(), &b, 2, 4).map_err(|e| e.to_string())?;
        let dims = five_term_dims(&b, &n).map_err(|e| e.to_string())?;
        ensure!(h24 == 1, "p={p}: H_{{2,4}}(B) = {h24}");
        ensure!(
            dims.derived_ker_d == 1,
            "p={p}: derived dim ker d = {}",
            dims.derived_ker_d
        );
        ensure!(
            dims.h12_n == 0 && dims.h02_n == 0,
            "p={p}: H_{{1,2}}(N) = {}, H_{{0,2}}(N) = {}",
            dims.h12_n,
            dims.h02_n
        );
    }
    Ok("H_{2,4}(B) = 1, dim ker d = 1, H_{1,2}(N) = H_{0,2}(N) = 0 for p = 2, 3, 5".into())
}

fn split_form() -> Check {
    let field = f(2);
    let lambda = Arc::new(exterior_algebra(4, field, 4));
    let r2 = Subspace::from_vectors(field, 6, &[vec![1, 0, 0, 0, 0, 1]]).unwrap();
    let ideal = ideal_in_exterior(lambda.clone(), &r2).map_err(|e| e.to_string())?;
    let dims = ideal.submodule.dims();
    ensure!(
        dims[3] == 4 && dims[4] == 1,
        "I_3 = {}, I_4 = {}",
        dims[3],
        dims[4]
    );
    let shifted = shift(&ideal.module, 2);
    let report = is_quadratic_module(&lambda, &shifted, 4).map_err(|e| e.to_string())?;
    ensure!(!report.quadratic, "I(2) reported quadratic");
    let w = report.witness.ok_or("no witness")?;
    ensure!((w.0, w.1) == (1, 2), "witness {w:?}");
    let q = quadratic_part_module(&shifted).map_err(|e| e.to_string())?;
    let free = realize_module(&q, 4).map_err(|e| e.to_string())?;
    ensure!(
        q.h_dim == 1 && q.relations.is_zero(),
        "q(I(2)) is not free of rank 1"
    );
    ensure!(
        free.hilbert_function() == [1, 4, 6, 4, 1],
        "q(I(2)) dims {:?}",
        free.hilbert_function()
    );
    Ok(format!(
        "witness H_{{1,2}} = {}, I_3 = 4, I_4 = 1, q(I(2)) free of rank 1",
        w.2
    ))
}

fn classical() -> Check {
    for p in [2, 3, 5] {
        for n in 1..=4 {
            for (name, a) in [
                ("Λ", exterior_algebra(n, f(p), 7)),
                ("S", symmetric_algebra(n, f(p), 7)),
            ] {
                let a = Arc::new(a);
                let k = GradedModule::trivial(a.clone());
                let t = homology_table(&a, &k, 6, 6).map_err(|e| e.to_string())?;
                for (i, j, dim) in t.cells() {
                    let want = match (name, i as i32 == j) {
                        (_, false) => 0,
                        ("Λ", true) => binomial(n + i - 1, i),
                        _ => binomial(n, i),
                    };
                    ensure!(
                        dim == want,
                        "p={p} {name}(F^{n}): H_{{{i},{j}}} = {dim}, expected {want}"
                    );
                }
            }
        }
    }
    Ok("Λ and S on F_p^n, n <= 4, p = 2, 3, 5, rectangle (6, 6)".into())
}

fn demushkin() -> Check {
    for p in [2, 3] {
        for d in [2, 4] {
            for i in 0..=5 {
                let a = demushkin_alpha(d, f(p), i).map_err(|e| e.to_string())?;
                ensure!(
                    a.rank() == a.cols(),
                    "p={p} d={d}: α_{} not injective",
                    i + 1
                );
            }
            let r =
                verify_theorem_c(&GroupExpr::Demushkin(d), f(p), 6).map_err(|e| e.to_string())?;
            ensure!(
                r.verdict == KoszulVerdict::KoszulUpTo && r.i_max >= 6 && r.j_max >= 6,
                "p={p} d={d}: {:?} on ({}, {}), defects {:?}",
                r.verdict,
                r.i_max,
                r.j_max,
                r.defects
            );
        }
    }
    Ok("d = 2, 4; p = 2, 3; α_1..α_6 injective, Koszul on (6, 6)".into())
}

const GROUPS: [&str; 10] = [
    "(D(2) * F(1))",
    "(A(1) x D(2))",
    "(D(4) * F(2))",
    "(A(2) x (D(2) * Zp))",
    "((A(1) x D(4)) * Zp)",
    "(A(1) x (A(1) x (D(2) * F(1))))",
    "((D(2) * D(2)) * Zp)",
    "(A(1) x ((A(1) x Zp) * F(2)))",
    "((A(2) x Zp) * (A(1) x D(2)))",
    "(A(3) x (F(1) * F(2)))",
];

fn nested_groups() -> Check {
    let field = f(3);
    let mut max_h1 = 0;
    for text in GROUPS {
        let e: GroupExpr = text
            .parse()
            .map_err(|e: koszul_core::Error| e.to_string())?;
        let h1 = psi_and_kernel(&e, field, 2)
            .map_err(|e| e.to_string())?
            .lambda
            .dim(1);
        ensure!(h1 <= 6, "{text}: dim H^1 = {h1}");
        max_h1 = max_h1.max(h1);
        let r = verify_theorem_c(&e, field, 5).map_err(|e| format!("{text}: {e}"))?;
        ensure!(
            r.verdict == KoszulVerdict::KoszulUpTo,
            "{text}: defects {:?}",
            r.defects
        );
    }
    Ok(format!(
        "{} expressions, dim H^1 <= {max_h1}, Koszul on (5, 5)",
        GROUPS.len()
    ))
}

fn route_agreement() -> Check {
    let field = f(2);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut quadratic, mut passes) = (0, 0);
    for k in 0..50u64 {
        let n = rng.gen_range(2..=4);
        let r = rng.gen_range(0..=binomial(n, 2));
        let r2 = sample_r2(field, n, r, 2024, k);
        let report = theorem_b_check(n, field, &r2, 6, Route::Both).map_err(|e| e.to_string())?;
        if report.verdict == TheoremBVerdict::NotQuadraticPrecondition {
            continue;
        }
        quadratic += 1;
        passes += (report.verdict == TheoremBVerdict::Passes) as usize;
        let (direct, dual) = (
            report.direct.as_ref().unwrap(),
            report.dual.as_ref().unwrap(),
        );
        for j in 0..=6 {
            let d_ok = direct.failures.iter().all(|c| c.1 > j);
            let w_ok = dual.failures.iter().all(|c| c.1 > j);
            ensure!(
                d_ok == w_ok,
                "sample {k} (n={n}, r={r}): routes disagree through degree {j}"
            );
        }
        ensure!(
            report.agreement == Some(true),
            "sample {k}: agreement flag {:?}",
            report.agreement
        );
    }
    Ok(format!(
        "50 ideals, {quadratic} quadratic, {passes} pass, routes agree"
    ))
}

fn properties() -> Check {
    let laws: [(&str, fn(u64) -> Result<(), TestCaseError>); 7] = [
        ("vanishing", common::laws::vanishing),
        ("shift", common::laws::shift_law),
        ("Künneth", common::laws::kunneth),
        ("d² = 0", common::laws::square_zero),
        ("Koszul complex vs bar", common::laws::koszul_vs_bar),
        ("bar vs resolution", common::laws::bar_vs_resolution),
        ("ideal/quotient", common::laws::ideal_complement),
    ];
    for (name, law) in laws {
        let mut runner = TestRunner::new(Config {
            cases: 200,
            failure_persistence: None,
            ..Config::default()
        });
        runner
            .run(&any::<u64>(), law)
            .map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} laws x 200 cases", laws.len()))
}

fn random_search() -> Check {
    let field = f(2);
    let mut lines = Vec::new();
    let mut reports = Vec::new();
    for r in 1..=3 {
        let out = search(field, 4, r, 7, 17, 500, Route::Direct).map_err(|e| e.to_string())?;
        let s = &out.summary;
        lines.push(format!(
            "r={r}: {} passes, {} Koszul, hits {:?}",
            s.theorem_b_passes, s.koszul_up_to_d, s.b_but_not_koszul
        ));
        reports.push(out);
    }
    let path = std::path::Path::new(env!("CARGO_TARGET_TMPDIR")).join("search_report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&reports).unwrap())
        .map_err(|e| e.to_string())?;
    // a hit is a finding to report, not a failure
    Ok(format!(
        "{}; report at {}",
        lines.join("; "),
        path.display()
    ))
}

fn main() {
    let criteria: [(&str, Duration, fn() -> Check); 9] = [
        (
            "F(2) over Λ(F_p^2) matches the oracle",
            Duration::from_secs(10),
            free_group_oracle,
        ),
        (
            "F(2) x F(2) five-term sequence",
            Duration::from_secs(60),
            free_square,
        ),
        (
            "split-form ideal is not quadratic",
            Duration::from_secs(5),
            split_form,
        ),
        (
            "exterior and symmetric algebras are Koszul",
            Duration::from_secs(60),
            classical,
        ),
        ("Demushkin groups", Duration::from_secs(120), demushkin),
        (
            "nested group expressions",
            Duration::from_secs(600),
            nested_groups,
        ),
        (
            "direct and dual routes agree",
            Duration::from_secs(900),
            route_agreement,
        ),
        ("property laws", Duration::from_secs(3600), properties),
        (
            "random search for counterexamples",
            Duration::from_secs(7200),
            random_search,
        ),
    ];
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(_) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            o => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += outcome.is_err() as usize;
        println!(
            "criterion {} {tag} {name} ({:.2?} / {limit:?}): {detail}",
            k + 1,
            took
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
