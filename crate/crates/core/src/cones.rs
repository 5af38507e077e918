//! Eigencone `V(A) = {x : A ⊗ x = λx}` and subeigencone
//! `V*(A) = {x : A ⊗ x ≤ λx}`: bases, membership and dimensions.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::linalg::rank_of_rows;
use crate::matrix::{MaxMatrix, MaxVector};
use crate::scalar::{Exact, Scalar};
use crate::spectral::{critical_structure, max_cycle_geometric_mean, SpectralData};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeKind {
    Eigencone,
    Subeigencone,
}

/// Max-extremal generators, each scaled to max-norm 1.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeBasis<S: Scalar> {
    pub generators: Vec<MaxVector<S>>,
    /// Column of the Kleene star each generator was taken from.
    pub source_columns: Vec<usize>,
    pub kind: ConeKind,
}

impl<S: Scalar> ConeBasis<S> {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Scaled columns of `(A/λ)*` with indices in `M(A)` (eigencone) or
/// `M(A) ∪ N̄_c(A)` (subeigencone).
pub fn cone_basis<S: Scalar>(spec: &SpectralData<S>, kind: ConeKind) -> ConeBasis<S> {
    let mut indices = spec.representatives.clone();
    if kind == ConeKind::Subeigencone {
        indices.extend_from_slice(&spec.non_critical);
        indices.sort_unstable();
    }
    let eps = spec.definite.tolerance();
    let mut generators: Vec<MaxVector<S>> = Vec::with_capacity(indices.len());
    let mut source_columns = Vec::with_capacity(indices.len());
    for i in indices {
        let column = spec.star.column(i).normalized();
        if generators.iter().any(|g| proportional(g, &column, eps)) {
            continue;
        }
        generators.push(column);
        source_columns.push(i);
    }
    ConeBasis { generators, source_columns, kind }
}

pub fn subeigencone_basis<S: Scalar>(a: &MaxMatrix<S>) -> Result<ConeBasis<S>> {
    Ok(cone_basis(&critical_structure(a)?, ConeKind::Subeigencone))
}

pub fn eigencone_basis<S: Scalar>(a: &MaxMatrix<S>) -> Result<ConeBasis<S>> {
    Ok(cone_basis(&critical_structure(a)?, ConeKind::Eigencone))
}

/// Two nonnegative vectors are proportional iff they have the same support
/// and a constant ratio on it.
pub fn proportional<S: Scalar>(u: &MaxVector<S>, v: &MaxVector<S>, eps: f64) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let mut ratio: Option<S> = None;
    for (a, b) in u.iter().zip(v.iter()) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => continue,
            (false, false) => {}
            _ => return false,
        }
        let r = a.div(b);
        match &ratio {
            None => ratio = Some(r),
            Some(first) if first.cmp_tol(&r, eps) != Ordering::Equal => return false,
            Some(_) => {}
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Membership {
    /// Some row has `(A ⊗ x)_i > λx_i`.
    Outside,
    /// `A ⊗ x ≤ λx` with at least one strict row (or `x = 0`).
    SubeigenOnly,
    /// `A ⊗ x = λx` and `x ≠ 0`.
    Eigen,
}

impl Membership {
    /// `x ∈ V*(A)`.
    pub fn is_subeigen(self) -> bool {
        self >= Membership::SubeigenOnly
    }
}

/// Classifies `x` against `V(A) ⊆ V*(A)`.
pub fn membership<S: Scalar>(a: &MaxMatrix<S>, x: &MaxVector<S>) -> Result<Membership> {
    let lambda = max_cycle_geometric_mean(a)?;
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    classify(a, &lambda, x)
}

/// [`membership`] with a known `λ(A)`.
pub fn classify<S: Scalar>(a: &MaxMatrix<S>, lambda: &S, x: &MaxVector<S>) -> Result<Membership> {
    let image = a.apply(x)?;
    let eps = a.tolerance();
    let mut all_equal = true;
    for (y, xi) in image.iter().zip(x.iter()) {
        match y.cmp_tol(&lambda.mul(xi), eps) {
            Ordering::Greater => return Ok(Membership::Outside),
            Ordering::Less => all_equal = false,
            Ordering::Equal => {}
        }
    }
    Ok(if all_equal && !x.is_zero() { Membership::Eigen } else { Membership::SubeigenOnly })
}

/// Max-algebraic and linear-algebraic dimensions attached to `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionReport {
    /// `n(C(A))`.
    pub maxdim_eigencone: usize,
    /// `n(C(A)) + |N̄_c(A)|`.
    pub maxdim_subeigencone: usize,
    /// Dimension of the linear hull `L(C(A))`.
    pub linear_hull_dim: usize,
    /// Conventional rank of `(A/λ)*`; `None` on the float backend.
    pub linear_rank_star: Option<usize>,
}

pub fn dimensions<S: Scalar>(a: &MaxMatrix<S>) -> Result<DimensionReport> {
    let spec = critical_structure(a)?;
    Ok(dimensions_from(a, &spec))
}

/// On the exact backend the hull dimension is `n` minus the rank of the
/// system `a_ij x_j − λ x_i = 0`, `(i, j)` critical; on the float backend it
/// is the number of components of `C*(A)`.
pub fn dimensions_from<S: Scalar>(a: &MaxMatrix<S>, spec: &SpectralData<S>) -> DimensionReport {
    let n = a.n();
    let maxdim_eigencone = spec.n_components_critical();
    let maxdim_subeigencone = maxdim_eigencone + spec.non_critical.len();
    let exact_lambda = spec.lambda.as_exact();
    let linear_hull_dim = match exact_lambda {
        Some(lambda) => {
            let rows: Vec<Vec<Exact>> = spec
                .critical_edges
                .iter()
                .map(|&(i, j)| {
                    let mut row = vec![Exact::zero(); n];
                    row[j] = a.get(i, j).as_exact().unwrap().clone();
                    row[i] = &row[i] - lambda;
                    row
                })
                .collect();
            n - rank_of_rows(&rows)
        }
        None => spec.components.len(),
    };
    let linear_rank_star = crate::linalg::exact_rows(&spec.star).ok().map(|rows| rank_of_rows(&rows));
    DimensionReport { maxdim_eigencone, maxdim_subeigencone, linear_hull_dim, linear_rank_star }
}

/// `true` iff `a_ij v_j = λ v_i` on every critical edge, i.e. `v ∈ L(C(A))`.
/// `v` may have entries of any sign.
pub fn linear_hull_membership<S: Scalar>(a: &MaxMatrix<S>, v: &[S::Signed]) -> Result<bool> {
    let spec = critical_structure(a)?;
    hull_contains(a, &spec, v)
}

pub(crate) fn hull_contains<S: Scalar>(
    a: &MaxMatrix<S>,
    spec: &SpectralData<S>,
    v: &[S::Signed],
) -> Result<bool> {
    if v.len() != a.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: v.len() });
    }
    let eps = a.tolerance();
    Ok(spec.critical_edges.iter().all(|&(i, j)| {
        S::signed_eq(&a.get(i, j).scale_signed(&v[j]), &spec.lambda.scale_signed(&v[i]), eps)
    }))
}
