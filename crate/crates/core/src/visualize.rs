//! Visualization of a matrix by diagonal similarity.
//!
//! `A` is visualized when `a_ij ≤ λ(A)` everywhere with equality on critical
//! edges, and strictly visualized when in addition every non-critical entry
//! is `< λ(A)`. A scaling `X = diag(x)` strictly visualizes `A` exactly when
//! `x` lies in the relative interior of the subeigencone `V*(A)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::is_irreducible;
use crate::kleene::closure;
use crate::matrix::{MaxMatrix, MaxVector, Provenance, ScalingVector};
use crate::scalar::{Exact, Scalar};
use crate::spectral::{critical_structure, SpectralData};

pub use crate::cones::linear_hull_membership;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Visualization {
    NotVisualized,
    Visualized,
    StrictlyVisualized,
}

/// An entry that violates (or sits on the boundary of) the visualization
/// inequalities.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<S> {
    pub row: usize,
    pub col: usize,
    pub value: S,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisualizationStatus<S> {
    pub status: Visualization,
    /// Entries `> λ`, and non-critical entries `= λ`.
    pub witnesses: Vec<Witness<S>>,
    /// `min λ/a_ij` over positive non-critical entries; `None` if there are
    /// none.
    pub margin: Option<S>,
}

pub fn check_visualization<S: Scalar>(a: &MaxMatrix<S>) -> Result<VisualizationStatus<S>> {
    Ok(status_from(a, &critical_structure(a)?))
}

pub(crate) fn status_from<S: Scalar>(a: &MaxMatrix<S>, spec: &SpectralData<S>) -> VisualizationStatus<S> {
    let n = a.n();
    let eps = a.tolerance();
    let lambda = &spec.lambda;
    let mut status = Visualization::StrictlyVisualized;
    let mut witnesses = Vec::new();
    let mut margin: Option<S> = None;
    for i in 0..n {
        for j in 0..n {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let critical = spec.is_critical_edge(i, j);
            let ord = v.cmp_tol(lambda, eps);
            if !critical {
                let ratio = lambda.div(v);
                if margin.as_ref().is_none_or(|m| ratio.cmp_exact(m).is_lt()) {
                    margin = Some(ratio);
                }
            }
            let offending = match ord {
                Ordering::Greater => {
                    status = Visualization::NotVisualized;
                    true
                }
                Ordering::Equal if !critical => {
                    status = status.min(Visualization::Visualized);
                    true
                }
                _ => false,
            };
            if offending {
                witnesses.push(Witness { row: i, col: j, value: v.clone() });
            }
        }
    }
    VisualizationStatus { status, witnesses, margin }
}

/// How to pick a point of the relative interior of `V*(A)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    /// Plus-times sum of all columns of the Kleene star.
    ColumnSum,
    /// `∏_j (A*_{·j})^{w_j}` with positive weights summing to 1.
    LogConvex(Vec<BigRational>),
    /// Perron vector of the Kleene star.
    Perron,
}

/// Ratio convergence threshold of the Perron power iteration.
pub const PERRON_TOLERANCE: f64 = 1e-12;

/// A positive `x` such that `X⁻¹AX` is strictly visualized.
pub fn strict_visualizer<S: Scalar>(a: &MaxMatrix<S>, method: &Method) -> Result<ScalingVector<S>> {
    let spec = critical_structure(a)?;
    visualizer_from(&spec, method)
}

pub(crate) fn visualizer_from<S: Scalar>(
    spec: &SpectralData<S>,
    method: &Method,
) -> Result<ScalingVector<S>> {
    let star = &spec.star;
    let n = star.n();
    match method {
        Method::ColumnSum => {
            let x = star
                .rows()
                .map(|row| row.iter().skip(1).fold(row[0].clone(), |acc, v| acc.sum(v)))
                .collect();
            ScalingVector::new(x, Provenance::ColumnSum)
        }
        Method::LogConvex(weights) => {
            check_weights(weights, n)?;
            if !is_irreducible(&spec.definite) {
                return Err(Error::ReducibleMatrix);
            }
            let x = star
                .rows()
                .map(|row| S::weighted_geometric_mean(row, weights))
                .collect::<Result<Vec<_>>>()?;
            single_field(&x)?;
            ScalingVector::new(x, Provenance::LogConvex)
        }
        Method::Perron => {
            if !is_irreducible(&spec.definite) {
                return Err(Error::ReducibleMatrix);
            }
            let v = perron_vector(star)?;
            ScalingVector::new(snap_perron(spec, &v), Provenance::Perron)
        }
    }
}

/// Exact entries from two different radical fields cannot be multiplied,
/// so such a vector is useless as a scaling.
fn single_field<S: Scalar>(x: &[S]) -> Result<()> {
    let mut fields = x.iter().filter_map(|v| v.as_exact().and_then(Exact::field));
    if let Some(first) = fields.next() {
        if let Some(other) = fields.find(|f| *f != first) {
            return Err(Error::Unrepresentable(format!(
                "entries in Q({}^(1/{})) and Q({}^(1/{}))",
                first.radicand(),
                first.degree(),
                other.radicand(),
                other.degree()
            )));
        }
    }
    Ok(())
}

fn check_weights(weights: &[BigRational], n: usize) -> Result<()> {
    if weights.len() != n {
        return Err(Error::InvalidWeights(format!("expected {n} weights, got {}", weights.len())));
    }
    if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
        return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
    }
    let total: BigRational = weights.iter().sum();
    if !total.is_one() {
        return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
    }
    Ok(())
}

/// Plus-times power iteration on a positive matrix, from the all-ones vector.
///
/// The convergence rate is the ratio of the two largest eigenvalues, which
/// gets close to 1 for nearly decoupled blocks. Every [`SQUARING_PERIOD`]
/// unconverged steps the iterated matrix is squared, so the cap is always
/// enough.
fn perron_vector<S: Scalar>(m: &MaxMatrix<S>) -> Result<Vec<f64>> {
    let n = m.n();
    // A global rescale leaves the eigenvector unchanged and keeps the linear
    // values in range.
    let top = m.rows().flatten().map(S::ln).fold(f64::NEG_INFINITY, f64::max);
    let mut dense: Vec<f64> = m.rows().flatten().map(|v| (v.ln() - top).exp()).collect();
    let digits = (-PERRON_TOLERANCE.log10()).ceil() as usize;
    let cap = 10 * n * digits;
    let mut v = vec![1.0; n];
    let mut w = vec![0.0; n];
    for step in 0..cap {
        for (i, slot) in w.iter_mut().enumerate() {
            *slot = dense[i * n..(i + 1) * n].iter().zip(&v).map(|(a, b)| a * b).sum();
        }
        let peak = w.iter().copied().fold(0.0, f64::max);
        if !(peak.is_finite() && peak > 0.0) {
            break;
        }
        w.iter_mut().for_each(|x| *x /= peak);
        let change = w.iter().zip(&v).map(|(a, b)| (a / b - 1.0).abs()).fold(0.0, f64::max);
        std::mem::swap(&mut v, &mut w);
        if change < PERRON_TOLERANCE {
            return Ok(v);
        }
        if step % SQUARING_PERIOD == SQUARING_PERIOD - 1 {
            dense = square(&dense, n);
        }
    }
    Err(Error::PowerIterationDivergence { iterations: cap, tolerance: PERRON_TOLERANCE })
}

const SQUARING_PERIOD: usize = 16;

/// `M²` rescaled so that its largest entry is 1.
fn square(m: &[f64], n: usize) -> Vec<f64> {
    let mut out = vec![0.0; n * n];
    for i in 0..n {
        let row = &mut out[i * n..(i + 1) * n];
        for k in 0..n {
            let a = m[i * n + k];
            for (slot, b) in row.iter_mut().zip(&m[k * n..(k + 1) * n]) {
                *slot += a * b;
            }
        }
    }
    let peak = out.iter().copied().fold(0.0, f64::max);
    out.iter_mut().for_each(|x| *x /= peak);
    out
}

/// Converts the float Perron vector to the backend and forces the eigencone
/// relations `x_i = b*_ir x_r` on each critical component, which power
/// iteration only satisfies approximately. The result is scaled so that
/// its least entry is 1.
fn snap_perron<S: Scalar>(spec: &SpectralData<S>, v: &[f64]) -> Vec<S> {
    let mut x: Vec<S> = v.iter().map(|&f| approximate::<S>(f)).collect();
    for comp in &spec.critical_components {
        let r = comp[0];
        for &i in &comp[1..] {
            x[i] = spec.star.get(i, r).mul(&x[r]);
        }
    }
    let least = x.iter().skip(1).fold(x[0].clone(), |acc, v| {
        if v.cmp_exact(&acc).is_lt() {
            v.clone()
        } else {
            acc
        }
    });
    x.iter().map(|v| v.div(&least)).collect()
}

/// Nearest backend value to `f`; exact backends get the first continued
/// fraction convergent within `PERRON_TOLERANCE / 10` relative error.
fn approximate<S: Scalar>(f: f64) -> S {
    if S::MODE == crate::scalar::NumericMode::FloatLog {
        return S::from_f64(f);
    }
    let target = f;
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = f;
    for _ in 0..64 {
        let a = rest.floor();
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let q = BigRational::new(h1.clone(), k1.clone());
        let approx = S::from_rational(&q);
        if ((approx.to_f64() - target) / target).abs() <= PERRON_TOLERANCE / 10.0 {
            return approx;
        }
        let frac = rest - a;
        if frac == 0.0 {
            return approx;
        }
        rest = 1.0 / frac;
    }
    S::from_f64(f)
}

/// `x ∈ ri(V*(A))`, decided by whether `X⁻¹AX` is strictly visualized.
pub fn in_relative_interior<S: Scalar>(a: &MaxMatrix<S>, x: &ScalingVector<S>) -> Result<bool> {
    Ok(check_visualization(&a.diag_similarity(x)?)?.status == Visualization::StrictlyVisualized)
}

/// The matrix `A^C` of componentwise maxima over the components `N_μ` of
/// `C*(A)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientMatrix<S: Scalar> {
    pub m: usize,
    pub alpha: MaxMatrix<S>,
    pub node_to_component: Vec<usize>,
    pub component_nodes: Vec<Vec<usize>>,
}

/// Spectral data of a definite, visualized matrix, or the reason it is not.
fn visualized_definite<S: Scalar>(a: &MaxMatrix<S>) -> Result<SpectralData<S>> {
    let spec = critical_structure(a)?;
    if spec.lambda.cmp_tol(&S::one(), a.tolerance()) != Ordering::Equal {
        return Err(Error::NotDefinite { lambda: spec.lambda.to_string() });
    }
    let status = status_from(a, &spec);
    if status.status == Visualization::NotVisualized {
        let w = &status.witnesses[0];
        return Err(Error::NotVisualized { row: w.row, col: w.col });
    }
    Ok(spec)
}

pub fn quotient_matrix<S: Scalar>(a: &MaxMatrix<S>) -> Result<QuotientMatrix<S>> {
    let spec = visualized_definite(a)?;
    Ok(quotient_from(a, &spec))
}

fn quotient_from<S: Scalar>(a: &MaxMatrix<S>, spec: &SpectralData<S>) -> QuotientMatrix<S> {
    let m = spec.components.len();
    let mut alpha = MaxMatrix::zeros(m).with_tolerance(a.tolerance());
    let node = &spec.node_component;
    for i in 0..a.n() {
        for j in 0..a.n() {
            let (mu, nu) = (node[i], node[j]);
            if a.get(i, j).cmp_exact(alpha.get(mu, nu)).is_gt() {
                alpha.set(mu, nu, a.get(i, j).clone());
            }
        }
    }
    QuotientMatrix {
        m,
        alpha,
        node_to_component: node.clone(),
        component_nodes: spec.components.clone(),
    }
}

/// Checks that every block `(μ, ν)` of `A*` is the constant `α*_{μν}`.
pub fn star_block_structure<S: Scalar>(a: &MaxMatrix<S>) -> Result<bool> {
    let spec = visualized_definite(a)?;
    let q = quotient_from(a, &spec);
    let alpha_star = closure(&q.alpha);
    let eps = a.tolerance();
    let node = &q.node_to_component;
    Ok((0..a.n()).all(|i| {
        (0..a.n()).all(|j| spec.star.get(i, j).cmp_tol(alpha_star.get(node[i], node[j]), eps).is_eq())
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preservation {
    /// `X⁻¹AX` is not visualized.
    Breaks,
    /// `X⁻¹AX` is visualized but not strictly.
    PreservesVisualized,
    /// `X⁻¹AX` is strictly visualized.
    MakesStrict,
}

/// Classifies `x` for a definite visualized `A`: it must be constant on
/// every component `N_μ`, and the induced `x̃` must satisfy
/// `α_μν x̃_ν ≤ x̃_μ` for `μ ≠ ν` (strictly, for strict visualization).
pub fn preserving_scaling_check<S: Scalar>(a: &MaxMatrix<S>, x: &ScalingVector<S>) -> Result<Preservation> {
    if x.len() != a.n() {
        return Err(Error::DimensionMismatch { left: a.n(), right: x.len() });
    }
    let q = quotient_matrix(a)?;
    let eps = a.tolerance();
    let mut xt = Vec::with_capacity(q.m);
    for comp in &q.component_nodes {
        let first = x.get(comp[0]);
        if comp[1..].iter().any(|&i| x.get(i).cmp_tol(first, eps) != Ordering::Equal) {
            return Ok(Preservation::Breaks);
        }
        xt.push(first.clone());
    }
    let mut verdict = Preservation::MakesStrict;
    for mu in 0..q.m {
        for nu in 0..q.m {
            let alpha = q.alpha.get(mu, nu);
            if mu == nu || alpha.is_zero() {
                continue;
            }
            match alpha.mul(&xt[nu]).cmp_tol(&xt[mu], eps) {
                Ordering::Greater => return Ok(Preservation::Breaks),
                Ordering::Equal => verdict = Preservation::PreservesVisualized,
                Ordering::Less => {}
            }
        }
    }
    Ok(verdict)
}

/// `x_i = x̃_μ` for `i ∈ N_μ`: the direct sum `x̃_1 I_1 ∔ ⋯ ∔ x̃_m I_m`.
pub fn lift_scaling<S: Scalar>(q: &QuotientMatrix<S>, xt: &MaxVector<S>) -> Result<ScalingVector<S>> {
    if xt.len() != q.m {
        return Err(Error::DimensionMismatch { left: q.m, right: xt.len() });
    }
    ScalingVector::user(q.node_to_component.iter().map(|&mu| xt.get(mu).clone()).collect())
}
