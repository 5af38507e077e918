//! `oracle <stage>`: cross-checks a fast routine against its brute-force
//! oracle, on one input file or on seeded random matrices.

use clap::ValueEnum;
use maxvis::io::{format_scalar, serialize_matrix};
use maxvis::spectral::{critical_edges_by_enumeration, lambda_root};
use maxvis::{
    brute_force_assignment, brute_force_lambda, critical_structure, definite_form, kleene_series_oracle,
    kleene_star, max_cycle_geometric_mean, maximal_permutation, Exact, MaxMatrix, Scalar,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Mismatch, Oracle};
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Stage {
    /// Karp's algorithm against cycle enumeration.
    Lambda,
    /// Floyd–Warshall closure against the truncated series.
    Star,
    /// Critical edges against cycle enumeration.
    Critical,
    /// The Hungarian method against permutation enumeration.
    Assign,
}

impl Stage {
    fn name(self) -> &'static str {
        match self {
            Stage::Lambda => "lambda",
            Stage::Star => "star",
            Stage::Critical => "critical",
            Stage::Assign => "assign",
        }
    }
}

/// Random matrix with entries `p/q`, `p, q ∈ 1..=12`, zero with probability
/// 0.3; redrawn until it has a cycle when `cyclic` is set.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, cyclic: bool) -> MaxMatrix<Exact> {
    loop {
        let a = MaxMatrix::from_fn(n, |_, _| {
            if rng.gen_bool(0.3) {
                Exact::zero()
            } else {
                Exact::new(rng.gen_range(1..=12), rng.gen_range(1..=12))
            }
        });
        if !cyclic || lambda_root(&a).is_some() {
            return a;
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Outcome of one comparison: `None` on agreement, otherwise the two
/// answers.
fn compare<S: Scalar>(stage: Stage, a: &MaxMatrix<S>) -> Result<Option<(String, String)>, CliError> {
    let eps = a.tolerance();
    let scalar_pair = |x: &S, y: &S| (!x.cmp_tol(y, eps).is_eq()).then(|| (format_scalar(x), format_scalar(y)));
    Ok(match stage {
        Stage::Lambda => scalar_pair(&max_cycle_geometric_mean(a)?, &brute_force_lambda(a)?),
        Stage::Star => {
            let d = definite_form(a)?;
            let (fast, slow) = (kleene_star(&d)?.star, kleene_series_oracle(&d)?);
            (!fast.approx_eq(&slow)).then(|| (serialize_matrix(&fast), serialize_matrix(&slow)))
        }
        Stage::Critical => {
            let fast = critical_structure(a)?.critical_edges;
            let slow = critical_edges_by_enumeration(a)?;
            (fast != slow).then(|| (format!("{fast:?}"), format!("{slow:?}")))
        }
        Stage::Assign => match (maximal_permutation(a), brute_force_assignment(a)) {
            (Ok(p), Ok(b)) => scalar_pair(&p.weight, &b.weight),
            (Err(e), Err(f)) if e == f => None,
            (p, b) => Some((outcome(p), outcome(b))),
        },
    })
}

fn outcome<S: Scalar>(r: maxvis::Result<maxvis::Permutation<S>>) -> String {
    match r {
        Ok(p) => format_scalar(&p.weight),
        Err(e) => e.to_string(),
    }
}

pub fn run<S: Scalar>(stage: Stage, inputs: Vec<MaxMatrix<S>>) -> Result<Oracle, CliError> {
    let mut report = Oracle { stage: stage.name().to_string(), trials: inputs.len(), agreements: 0, mismatches: Vec::new() };
    for (trial, a) in inputs.iter().enumerate() {
        match compare(stage, a)? {
            None => report.agreements += 1,
            Some((fast, oracle)) => report.mismatches.push(Mismatch {
                trial,
                matrix: serialize_matrix(a),
                fast,
                oracle,
            }),
        }
    }
    Ok(report)
}

/// `trials` random matrices of size `2..=max_n`.
pub fn random_inputs(stage: Stage, seed: u64, trials: usize, max_n: usize) -> Vec<MaxMatrix<Exact>> {
    let mut rng = seeded(seed);
    let cyclic = stage == Stage::Star;
    (0..trials)
        .map(|_| {
            let n = rng.gen_range(2..=max_n.max(2));
            random_matrix(&mut rng, n, cyclic)
        })
        .collect()
}
