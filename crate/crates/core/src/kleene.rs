//! Kleene star `A* = I ⊕ A ⊕ A² ⊕ …`, finite exactly when `λ(A) ≤ 1`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::matrix::MaxMatrix;
use crate::scalar::Scalar;
use crate::spectral::{lambda_root, max_cycle_geometric_mean, ORACLE_LIMIT};

/// A Kleene star together with the matrix it closes.
#[derive(Debug, Clone, PartialEq)]
pub struct KleeneStar<S: Scalar> {
    pub star: MaxMatrix<S>,
    pub source: MaxMatrix<S>,
}

/// Max-times Floyd–Warshall followed by `⊕ I`. Assumes `λ(A) ≤ 1`.
pub(crate) fn closure<S: Scalar>(a: &MaxMatrix<S>) -> MaxMatrix<S> {
    let n = a.n();
    let mut c = a.clone();
    let data = c.entries_mut();
    let mut pivot_row = Vec::with_capacity(n);
    for k in 0..n {
        pivot_row.clear();
        pivot_row.extend_from_slice(&data[k * n..(k + 1) * n]);
        for i in 0..n {
            let aik = data[i * n + k].clone();
            S::accumulate_row(&mut data[i * n..(i + 1) * n], &aik, &pivot_row);
        }
    }
    let one = S::one();
    for i in 0..n {
        if data[i * n + i].cmp_exact(&one).is_lt() {
            data[i * n + i] = one.clone();
        }
    }
    c
}

/// How `λ(A)` compares with 1, honouring the float tolerance. `None` when
/// `A` has no cycle.
pub(crate) fn lambda_vs_one<S: Scalar>(a: &MaxMatrix<S>) -> Option<Ordering> {
    let (base, degree) = lambda_root(a)?;
    Some(if base.as_exact().is_some() {
        S::cmp_roots(&base, degree, &S::one(), 1)
    } else {
        let log = base.ln() / degree as f64;
        if log.abs() <= a.tolerance() {
            Ordering::Equal
        } else if log < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    })
}

fn require_convergent<S: Scalar>(a: &MaxMatrix<S>) -> Result<()> {
    if lambda_vs_one(a) == Some(Ordering::Greater) {
        let lambda = max_cycle_geometric_mean(a)
            .map(|l| l.to_string())
            .unwrap_or_else(|_| "λ".to_string());
        return Err(Error::LambdaExceedsOne { lambda });
    }
    Ok(())
}

/// `A*`; for `i ≠ j` the entry `a*_ij` is the heaviest path weight from `i`
/// to `j`. Fails with [`Error::LambdaExceedsOne`] when the series diverges.
pub fn kleene_star<S: Scalar>(a: &MaxMatrix<S>) -> Result<KleeneStar<S>> {
    require_convergent(a)?;
    Ok(KleeneStar { star: closure(a), source: a.clone() })
}

/// `I ⊕ A ⊕ … ⊕ A^{n−1}` by repeated products. Test oracle.
pub fn kleene_series_oracle<S: Scalar>(a: &MaxMatrix<S>) -> Result<MaxMatrix<S>> {
    if a.n() > ORACLE_LIMIT {
        return Err(Error::OracleLimitExceeded { n: a.n(), limit: ORACLE_LIMIT });
    }
    require_convergent(a)?;
    let mut power = MaxMatrix::identity(a.n()).with_tolerance(a.tolerance());
    let mut sum = power.clone();
    for _ in 1..a.n() {
        power = power.otimes(a)?;
        sum = sum.oplus(&power)?;
    }
    Ok(sum)
}

/// `A` is a Kleene star iff `A ⊗ A = A` and every diagonal entry is 1.
pub fn is_kleene_star<S: Scalar>(a: &MaxMatrix<S>) -> bool {
    let eps = a.tolerance();
    let one = S::one();
    (0..a.n()).all(|i| a.get(i, i).cmp_tol(&one, eps).is_eq())
        && a.otimes(a).is_ok_and(|sq| sq.approx_eq(a))
}
