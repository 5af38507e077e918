//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use maxvis::{critical_structure, Exact, MaxMatrix, MaxVector, Method, Scalar, ScalingVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(n: i64, d: i64) -> Exact {
    Exact::new(n, d)
}

pub fn exact_rows(rows: &[&[(i64, i64)]]) -> MaxMatrix<Exact> {
    MaxMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&(a, b)| q(a, b)).collect()).collect()).unwrap()
}

/// The 6×6 Kleene star with blocks of 5/11 inside `{1,2,3}` and `{4,5,6}`
/// and 7/11 across.
pub fn golden_matrix() -> MaxMatrix<Exact> {
    MaxMatrix::from_fn(6, |i, j| {
        if i == j {
            q(1, 1)
        } else if (i < 3) == (j < 3) {
            q(5, 11)
        } else {
            q(7, 11)
        }
    })
}

pub fn golden_eigenvector() -> MaxVector<Exact> {
    MaxVector::new(vec![q(7, 11), q(7, 11), q(7, 11), q(1, 1), q(1, 1), q(1, 1)]).unwrap()
}

/// Positive rational `p/q` with `p, q ∈ 1..=12`.
pub fn positive(rng: &mut ChaCha8Rng) -> Exact {
    q(rng.gen_range(1..=12), rng.gen_range(1..=12))
}

/// Random nonnegative matrix; each entry is zero with probability `zeros`.
pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, zeros: f64) -> MaxMatrix<Exact> {
    MaxMatrix::from_fn(n, |_, _| if rng.gen_bool(zeros) { Exact::zero() } else { positive(rng) })
}

/// Random matrix with at least one cycle (`λ > 0`).
pub fn random_cyclic(rng: &mut ChaCha8Rng, n: usize, zeros: f64) -> MaxMatrix<Exact> {
    loop {
        let a = random_matrix(rng, n, zeros);
        if maxvis::spectral::lambda_root(&a).is_some() {
            return a;
        }
    }
}

pub fn random_scaling(rng: &mut ChaCha8Rng, n: usize) -> ScalingVector<Exact> {
    ScalingVector::user((0..n).map(|_| positive(rng)).collect()).unwrap()
}

/// `A / λ(A)` for a random cyclic `A`.
pub fn random_definite(rng: &mut ChaCha8Rng, n: usize, zeros: f64) -> MaxMatrix<Exact> {
    maxvis::definite_form(&random_cyclic(rng, n, zeros)).unwrap()
}

/// Definite and visualized: a strictly visualized scaling of a random
/// definite matrix, with some non-critical entries then raised to exactly 1
/// (which keeps `λ = 1` and every entry `≤ 1`).
pub fn random_visualized(rng: &mut ChaCha8Rng, n: usize, zeros: f64) -> MaxMatrix<Exact> {
    let a = random_definite(rng, n, zeros);
    let spec = critical_structure(&a).unwrap();
    let x = maxvis::visualize::strict_visualizer(&a, &Method::ColumnSum).unwrap();
    let mut b = a.diag_similarity(&x).unwrap();
    if rng.gen_bool(0.5) {
        for _ in 0..rng.gen_range(1..=2) {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if !spec.is_critical_edge(i, j) {
                b.set(i, j, Exact::one());
            }
        }
    }
    b
}

/// Plus-times combination of `columns` with random positive coefficients.
pub fn positive_combination<S: Scalar>(rng: &mut ChaCha8Rng, columns: &[MaxVector<S>]) -> Vec<S> {
    let n = columns[0].len();
    let mut out = vec![S::zero(); n];
    for col in columns {
        let c = S::from_rational(positive(rng).as_ratio().unwrap());
        for (slot, v) in out.iter_mut().zip(col.iter()) {
            *slot = slot.sum(&c.mul(v));
        }
    }
    out
}

/// Max-times combination of `columns` with random positive coefficients.
pub fn max_combination(rng: &mut ChaCha8Rng, columns: &[MaxVector<Exact>]) -> MaxVector<Exact> {
    let n = columns[0].len();
    let mut out = MaxVector::filled(n, Exact::zero());
    for col in columns {
        out = out.oplus(&col.scale(&positive(rng)));
    }
    out
}

fn arb_entry() -> impl proptest::strategy::Strategy<Value = Exact> {
    use proptest::prelude::*;
    prop_oneof![
        1 => Just(Exact::zero()),
        2 => (1i64..=12, 1i64..=12).prop_map(|(a, b)| q(a, b)),
    ]
}

/// Random `n × n` matrices with `n ∈ 1..=max_n`, about a third zeros.
pub fn arb_matrix(max_n: usize) -> impl proptest::strategy::Strategy<Value = MaxMatrix<Exact>> {
    use proptest::prelude::*;
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(arb_entry(), n * n)
            .prop_map(move |v| MaxMatrix::from_fn(n, |i, j| v[i * n + j].clone()))
    })
}

/// As [`arb_matrix`], restricted to matrices with a cycle.
pub fn arb_cyclic(max_n: usize) -> impl proptest::strategy::Strategy<Value = MaxMatrix<Exact>> {
    use proptest::prelude::*;
    arb_matrix(max_n).prop_filter("needs a cycle", |a| maxvis::spectral::lambda_root(a).is_some())
}

/// Positive scaling of dimension `n`.
pub fn arb_scaling(n: usize) -> impl proptest::strategy::Strategy<Value = ScalingVector<Exact>> {
    use proptest::prelude::*;
    proptest::collection::vec((1i64..=12, 1i64..=12), n)
        .prop_map(|v| ScalingVector::user(v.into_iter().map(|(a, b)| q(a, b)).collect()).unwrap())
}
