//! Max-product assignment and the two-sided scaling that turns every
//! maximal permutation into entries equal to 1.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::has_perfect_matching;
use crate::matrix::{MaxMatrix, ScalingVector};
use crate::scalar::Scalar;
use crate::spectral::max_cycle_geometric_mean;
use crate::visualize::{strict_visualizer, Method};

/// Dimension bound for the permutation-enumeration oracles.
pub const ASSIGNMENT_ORACLE_LIMIT: usize = 7;

/// Row `i` is assigned column `map[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Permutation<S> {
    pub map: Vec<usize>,
    /// `∏_i a_{i, map[i]}`.
    pub weight: S,
}

impl<S: Scalar> Permutation<S> {
    /// The permutation `map` with its weight in `a`.
    pub fn of(a: &MaxMatrix<S>, map: Vec<usize>) -> Self {
        let weight = map.iter().enumerate().fold(S::one(), |w, (i, &j)| w.mul(a.get(i, j)));
        Permutation { map, weight }
    }

    pub fn inverse_map(&self) -> Vec<usize> {
        let mut inv = vec![0; self.map.len()];
        for (i, &j) in self.map.iter().enumerate() {
            inv[j] = i;
        }
        inv
    }
}

/// A permutation of maximum weight, by the Hungarian method.
///
/// The method runs on costs `1/a_ij` in multiplicative form: potentials are
/// multiplied and divided instead of added and subtracted, so the exact
/// backend stays in the rationals. Zero entries are forbidden cells.
/// Ties are broken by the scan order (lowest row first, then lowest column).
pub fn maximal_permutation<S: Scalar>(a: &MaxMatrix<S>) -> Result<Permutation<S>> {
    if !has_perfect_matching(a) {
        return Err(Error::NoPositivePermutation);
    }
    let n = a.n();
    // `None` is an infinite cost; indices are 1-based with 0 as a sentinel.
    let cost = |i: usize, j: usize| -> Option<S> {
        let v = a.get(i - 1, j - 1);
        (!v.is_zero()).then(|| v.inv())
    };
    let less = |x: &Option<S>, y: &Option<S>| match (x, y) {
        (Some(x), Some(y)) => x.cmp_exact(y) == Ordering::Less,
        (Some(_), None) => true,
        _ => false,
    };
    let mut u = vec![S::one(); n + 1];
    let mut v = vec![S::one(); n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<S>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta: Option<S> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost(i0, j).map(|c| c.div(&u[i0].mul(&v[j])));
                if less(&cur, &minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if j1 == 0 || less(&minv[j], &delta) {
                    delta = minv[j].clone();
                    j1 = j;
                }
            }
            let delta = delta.expect("a perfect matching exists, so the tree can grow");
            for j in 0..=n {
                if used[j] {
                    u[p[j]] = u[p[j]].mul(&delta);
                    v[j] = v[j].div(&delta);
                } else if let Some(m) = &minv[j] {
                    minv[j] = Some(m.div(&delta));
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        while j0 != 0 {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        }
    }
    let mut map = vec![0; n];
    for j in 1..=n {
        map[p[j] - 1] = j - 1;
    }
    Ok(Permutation::of(a, map))
}

/// Calls `visit` with every permutation of `0..n` in lexicographic order.
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        visit(&perm);
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| perm[k] < perm[k + 1]) else {
            return;
        };
        let l = (k + 1..n).rev().find(|&l| perm[k] < perm[l]).unwrap();
        perm.swap(k, l);
        perm[k + 1..].reverse();
    }
}

/// Every permutation of maximum positive weight, by enumeration. Test
/// oracle.
pub fn maximal_permutations<S: Scalar>(a: &MaxMatrix<S>) -> Result<Vec<Permutation<S>>> {
    if a.n() > ASSIGNMENT_ORACLE_LIMIT {
        return Err(Error::OracleLimitExceeded { n: a.n(), limit: ASSIGNMENT_ORACLE_LIMIT });
    }
    let eps = a.tolerance();
    let mut best: Vec<Permutation<S>> = Vec::new();
    for_each_permutation(a.n(), |perm| {
        let cand = Permutation::of(a, perm.to_vec());
        if cand.weight.is_zero() {
            return;
        }
        match best.first().map(|b| cand.weight.cmp_tol(&b.weight, eps)) {
            None | Some(Ordering::Greater) => best = vec![cand],
            Some(Ordering::Equal) => best.push(cand),
            Some(Ordering::Less) => {}
        }
    });
    if best.is_empty() {
        return Err(Error::NoPositivePermutation);
    }
    Ok(best)
}

/// The lexicographically first maximal permutation, by enumeration. Test
/// oracle.
pub fn brute_force_assignment<S: Scalar>(a: &MaxMatrix<S>) -> Result<Permutation<S>> {
    Ok(maximal_permutations(a)?.swap_remove(0))
}

/// Result of scaling `A` so that its maximal permutations are visualized.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentVisualization<S: Scalar> {
    /// `diag(row_scaling) · A · diag(x)`: entries 1 on every maximal
    /// permutation and `< 1` elsewhere.
    pub result: MaxMatrix<S>,
    pub pi: Permutation<S>,
    /// Strict visualizer of `strongly_definite_form`.
    pub x: ScalingVector<S>,
    /// `(D^π)⁻¹A`, whose row `π(i)` is row `i` of `A` divided by `a_{iπ(i)}`.
    pub strongly_definite_form: MaxMatrix<S>,
    /// `d_i = 1 / (a_{iπ(i)} x_{π(i)})`.
    pub row_scaling: Vec<S>,
}

pub fn visualize_assignment<S: Scalar>(a: &MaxMatrix<S>) -> Result<AssignmentVisualization<S>> {
    let pi = maximal_permutation(a)?;
    visualize_with_permutation(a, pi)
}

/// As [`visualize_assignment`] with a given maximal permutation; fails with
/// [`Error::NotDefinite`] if `pi` is not maximal.
pub fn visualize_with_permutation<S: Scalar>(
    a: &MaxMatrix<S>,
    pi: Permutation<S>,
) -> Result<AssignmentVisualization<S>> {
    let n = a.n();
    if pi.map.len() != n {
        return Err(Error::DimensionMismatch { left: n, right: pi.map.len() });
    }
    if pi.weight.is_zero() {
        return Err(Error::NoPositivePermutation);
    }
    let inv = pi.inverse_map();
    let b = MaxMatrix::from_fn(n, |r, k| {
        let i = inv[r];
        a.get(i, k).div(a.get(i, pi.map[i]))
    })
    .with_tolerance(a.tolerance());
    let lambda = max_cycle_geometric_mean(&b)?;
    if lambda.cmp_tol(&S::one(), a.tolerance()) != Ordering::Equal {
        return Err(Error::NotDefinite { lambda: lambda.to_string() });
    }
    let x = strict_visualizer(&b, &Method::ColumnSum)?;
    let row_scaling: Vec<S> =
        (0..n).map(|i| a.get(i, pi.map[i]).mul(x.get(pi.map[i])).inv()).collect();
    let result = MaxMatrix::from_fn(n, |i, j| row_scaling[i].mul(a.get(i, j)).mul(x.get(j)))
        .with_tolerance(a.tolerance());
    Ok(AssignmentVisualization { result, pi, x, strongly_definite_form: b, row_scaling })
}
