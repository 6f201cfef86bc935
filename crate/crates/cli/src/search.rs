//! Random search for ideals `I ⊆ Λ(F_p^n)` that satisfy the hypotheses of
//! the vanishing criterion but are not Koszul.
//!
//! Sample `index` draws from a ChaCha stream keyed by the seed with stream
//! number `index`, so any record can be regenerated on its own.

use std::sync::Arc;

use koszul_core::criteria::{
    koszul_check, theorem_b_check, KoszulReport, KoszulVerdict, Route, TheoremBReport,
    TheoremBVerdict,
};
use koszul_core::fplinalg::{FpMatrix, PrimeField, Subspace};
use koszul_core::graded::shift;
use koszul_core::monomial::{binomial, exterior_algebra};
use koszul_core::quadratic::ideal_in_exterior;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::CliError;
use crate::input::IdealInput;

#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub index: u64,
    pub ideal: IdealInput,
    pub theorem_b: TheoremBReport,
    pub koszul: KoszulReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchSummary {
    pub count: u64,
    pub not_quadratic: u64,
    pub theorem_b_passes: u64,
    pub koszul_up_to_d: u64,
    /// Indices passing the vanishing criterion with a Koszul defect.
    pub b_but_not_koszul: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutput {
    pub p: u32,
    pub n: usize,
    pub r: usize,
    pub truncation: usize,
    pub seed: u64,
    pub records: Vec<SearchRecord>,
    pub summary: SearchSummary,
}

/// A uniformly random `r`-dimensional subspace of `Λ²(F_p^n)`.
pub fn sample_r2(field: PrimeField, n: usize, r: usize, seed: u64, index: u64) -> Subspace {
    let c = binomial(n, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    loop {
        let data: Vec<u32> = (0..r * c).map(|_| rng.gen_range(0..field.p())).collect();
        let m = FpMatrix::from_vec(field, r, c, data).unwrap();
        if m.rank() == r {
            return Subspace::from_spanning(&m);
        }
    }
}

/// Runs both checks on one `R2`.
pub fn evaluate(
    field: PrimeField,
    n: usize,
    r2: &Subspace,
    d: usize,
    route: Route,
) -> Result<(TheoremBReport, KoszulReport), CliError> {
    let b = theorem_b_check(n, field, r2, d, route)?;
    let lambda = Arc::new(exterior_algebra(n, field, d));
    let ideal = ideal_in_exterior(lambda.clone(), r2)?;
    // I(2) is known through d - 2 unless Λ is complete.
    let cap = if lambda.is_complete() { d } else { d - 2 };
    let k = koszul_check(&lambda, &shift(&ideal.module, 2), cap, cap as i32)?;
    Ok((b, k))
}

pub fn search(
    field: PrimeField,
    n: usize,
    r: usize,
    d: usize,
    seed: u64,
    count: u64,
    route: Route,
) -> Result<SearchOutput, CliError> {
    if r > binomial(n, 2) {
        return Err(CliError::Input(format!(
            "r = {r} exceeds dim Λ² = {}",
            binomial(n, 2)
        )));
    }
    if d < 4 {
        return Err(CliError::Input("search needs truncation >= 4".into()));
    }
    let records = (0..count)
        .into_par_iter()
        .map(|index| {
            let r2 = sample_r2(field, n, r, seed, index);
            let (theorem_b, koszul) = evaluate(field, n, &r2, d, route)?;
            Ok(SearchRecord {
                index,
                ideal: IdealInput::from_r2(n, &r2),
                theorem_b,
                koszul,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut summary = SearchSummary {
        count,
        not_quadratic: 0,
        theorem_b_passes: 0,
        koszul_up_to_d: 0,
        b_but_not_koszul: Vec::new(),
    };
    for rec in &records {
        let passes = rec.theorem_b.verdict == TheoremBVerdict::Passes;
        let koszul = rec.koszul.verdict == KoszulVerdict::KoszulUpTo;
        summary.not_quadratic +=
            (rec.theorem_b.verdict == TheoremBVerdict::NotQuadraticPrecondition) as u64;
        summary.theorem_b_passes += passes as u64;
        summary.koszul_up_to_d += koszul as u64;
        if passes && !koszul {
            summary.b_but_not_koszul.push(rec.index);
        }
    }
    Ok(SearchOutput {
        p: field.p(),
        n,
        r,
        truncation: d,
        seed,
        records,
        summary,
    })
}
