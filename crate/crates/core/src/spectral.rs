//! Maximum cycle geometric mean and the critical digraph.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{matrix_components, strong_components};
use crate::kleene;
use crate::matrix::MaxMatrix;
use crate::scalar::Scalar;

/// Default dimension bound for the enumeration oracles.
pub const ORACLE_LIMIT: usize = 8;

/// Spectral and structural data of a matrix with `λ(A) > 0`.
///
/// Node indices are 0-based. Components of `C*(A)` are the critical strongly
/// connected components together with one singleton per non-critical node,
/// ordered by least node.
#[derive(Debug, Clone)]
pub struct SpectralData<S: Scalar> {
    /// `λ(A)`, the maximum cycle geometric mean.
    pub lambda: S,
    /// `A / λ(A)`.
    pub definite: MaxMatrix<S>,
    /// Kleene star of the definite form.
    pub star: MaxMatrix<S>,
    pub critical_nodes: Vec<usize>,
    /// Sorted lexicographically.
    pub critical_edges: Vec<(usize, usize)>,
    /// Strongly connected components of the critical digraph `C(A)`.
    pub critical_components: Vec<Vec<usize>>,
    /// Strongly connected components of `C*(A)`.
    pub components: Vec<Vec<usize>>,
    /// Index into `components` for every node.
    pub node_component: Vec<usize>,
    /// `M(A)`: the least node of every critical component.
    pub representatives: Vec<usize>,
    pub non_critical: Vec<usize>,
    critical_mask: Vec<bool>,
}

impl<S: Scalar> SpectralData<S> {
    pub fn n(&self) -> usize {
        self.node_component.len()
    }

    pub fn is_critical_edge(&self, i: usize, j: usize) -> bool {
        self.critical_mask[i * self.n() + j]
    }

    /// `n(C(A))`, the number of critical components.
    pub fn n_components_critical(&self) -> usize {
        self.critical_components.len()
    }

    pub fn is_critical_node(&self, i: usize) -> bool {
        self.critical_nodes.binary_search(&i).is_ok()
    }
}

/// `λ(A)` as an unevaluated root `(base, degree)` meaning `base^{1/degree}`,
/// or `None` when the digraph of `A` is acyclic.
///
/// Karp's algorithm on every strongly connected component; the answer is the
/// best component value.
pub fn lambda_root<S: Scalar>(a: &MaxMatrix<S>) -> Option<(S, u32)> {
    let mut best: Option<(S, u32)> = None;
    for comp in matrix_components(a) {
        if let Some(cand) = karp_component(a, &comp) {
            if best.as_ref().is_none_or(|(b, d)| S::cmp_roots(&cand.0, cand.1, b, *d).is_gt()) {
                best = Some(cand);
            }
        }
    }
    best
}

fn karp_component<S: Scalar>(a: &MaxMatrix<S>, comp: &[usize]) -> Option<(S, u32)> {
    let s = comp.len();
    if s == 1 {
        let w = a.get(comp[0], comp[0]);
        return (!w.is_zero()).then(|| (w.clone(), 1));
    }
    let sub: Vec<S> = comp.iter().flat_map(|&u| comp.iter().map(move |&v| a.get(u, v).clone())).collect();
    // walks[k][v]: heaviest walk of exactly k edges from comp[0] to comp[v]
    let mut walks = vec![vec![S::zero(); s]; s + 1];
    walks[0][0] = S::one();
    for k in 1..=s {
        let (done, rest) = walks.split_at_mut(k);
        let prev = &done[k - 1];
        let cur = &mut rest[0];
        for (u, du) in prev.iter().enumerate() {
            S::accumulate_row(cur, du, &sub[u * s..(u + 1) * s]);
        }
    }
    // Karp: λ = max_v min_k (D_s(v) / D_k(v))^{1/(s−k)}. Candidates stay
    // unevaluated quotients until a float comparison is inconclusive.
    let mut best: Option<Quotient<S>> = None;
    for v in 0..s {
        let top = &walks[s][v];
        if top.is_zero() {
            continue;
        }
        let mut worst: Option<Quotient<S>> = None;
        for (k, row) in walks.iter().enumerate().take(s) {
            let dk = &row[v];
            if dk.is_zero() {
                continue;
            }
            let cand = Quotient::new(top, dk, (s - k) as u32);
            if worst.as_ref().is_none_or(|w| cand.cmp(w).is_lt()) {
                worst = Some(cand);
            }
        }
        if let Some(w) = worst {
            if best.as_ref().is_none_or(|b| w.cmp(b).is_gt()) {
                best = Some(w);
            }
        }
    }
    best.map(|b| (b.value(), b.degree))
}

/// `(num / den)^{1/degree}` with a float estimate of its logarithm.
struct Quotient<S> {
    num: S,
    den: S,
    degree: u32,
    log: f64,
    error: f64,
}

impl<S: Scalar> Quotient<S> {
    fn new(num: &S, den: &S, degree: u32) -> Self {
        let ((ln, en), (ld, ed)) = (num.ln_with_error(), den.ln_with_error());
        let d = degree as f64;
        Quotient { num: num.clone(), den: den.clone(), degree, log: (ln - ld) / d, error: (en + ed) / d }
    }

    fn value(&self) -> S {
        self.num.div(&self.den)
    }

    fn cmp(&self, other: &Self) -> Ordering {
        let gap = self.log - other.log;
        if gap.abs() > self.error + other.error {
            return if gap > 0.0 { Ordering::Greater } else { Ordering::Less };
        }
        S::cmp_roots(&self.value(), self.degree, &other.value(), other.degree)
    }
}

/// `λ(A) = max_σ w(σ, A)^{1/|σ|}` over all cycles; zero for acyclic digraphs.
pub fn max_cycle_geometric_mean<S: Scalar>(a: &MaxMatrix<S>) -> Result<S> {
    match lambda_root(a) {
        None => Ok(S::zero()),
        Some((base, degree)) => base.nth_root(degree),
    }
}

/// `A / λ(A)`, whose maximum cycle geometric mean is 1.
pub fn definite_form<S: Scalar>(a: &MaxMatrix<S>) -> Result<MaxMatrix<S>> {
    let lambda = max_cycle_geometric_mean(a)?;
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    Ok(a.scale(&lambda.inv()))
}

/// Computes `λ(A)`, the critical digraph and its components.
///
/// With `B = A/λ(A)`, the edge `(i, j)` is critical iff `b_ij · b*_ji = 1`:
/// the heaviest way back from `j` to `i` closes a cycle of mean 1.
pub fn critical_structure<S: Scalar>(a: &MaxMatrix<S>) -> Result<SpectralData<S>> {
    let lambda = max_cycle_geometric_mean(a)?;
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let definite = a.scale(&lambda.inv());
    let star = kleene::closure(&definite);
    Ok(structure_from(lambda, definite, star))
}

pub(crate) fn structure_from<S: Scalar>(
    lambda: S,
    definite: MaxMatrix<S>,
    star: MaxMatrix<S>,
) -> SpectralData<S> {
    let n = definite.n();
    let eps = definite.tolerance();
    let one = S::one();
    let mut critical_mask = vec![false; n * n];
    let mut critical_edges = Vec::new();
    let mut is_node = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            let b = definite.get(i, j);
            if b.is_zero() {
                continue;
            }
            if b.mul(star.get(j, i)).cmp_tol(&one, eps) == Ordering::Equal {
                critical_mask[i * n + j] = true;
                critical_edges.push((i, j));
                is_node[i] = true;
                is_node[j] = true;
            }
        }
    }
    let critical_nodes: Vec<usize> = (0..n).filter(|&i| is_node[i]).collect();
    let non_critical: Vec<usize> = (0..n).filter(|&i| !is_node[i]).collect();
    let critical_components = strong_components(&critical_nodes, critical_edges.iter().copied());
    let representatives = critical_components.iter().map(|c| c[0]).collect();

    let mut components: Vec<Vec<usize>> = critical_components
        .iter()
        .cloned()
        .chain(non_critical.iter().map(|&i| vec![i]))
        .collect();
    components.sort_unstable_by_key(|c| c[0]);
    let mut node_component = vec![0; n];
    for (mu, comp) in components.iter().enumerate() {
        for &i in comp {
            node_component[i] = mu;
        }
    }
    SpectralData {
        lambda,
        definite,
        star,
        critical_nodes,
        critical_edges,
        critical_components,
        components,
        node_component,
        representatives,
        non_critical,
        critical_mask,
    }
}

/// Calls `visit(nodes, weight)` for every simple cycle of the digraph of `A`.
/// Each cycle is reported once, starting from its least node.
pub fn for_each_simple_cycle<S: Scalar>(a: &MaxMatrix<S>, mut visit: impl FnMut(&[usize], &S)) {
    fn extend<S: Scalar>(
        a: &MaxMatrix<S>,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        weight: &S,
        visit: &mut dyn FnMut(&[usize], &S),
    ) {
        let last = *path.last().unwrap();
        for next in start..a.n() {
            let w = a.get(last, next);
            if w.is_zero() {
                continue;
            }
            let extended = weight.mul(w);
            if next == start {
                visit(path, &extended);
            } else if !on_path[next] {
                on_path[next] = true;
                path.push(next);
                extend(a, start, path, on_path, &extended, visit);
                path.pop();
                on_path[next] = false;
            }
        }
    }
    let mut on_path = vec![false; a.n()];
    for start in 0..a.n() {
        let mut path = vec![start];
        on_path[start] = true;
        extend(a, start, &mut path, &mut on_path, &S::one(), &mut visit);
        on_path[start] = false;
    }
}

/// `λ(A)` by enumerating every simple cycle. Test oracle.
pub fn brute_force_lambda<S: Scalar>(a: &MaxMatrix<S>) -> Result<S> {
    brute_force_lambda_with_limit(a, ORACLE_LIMIT)
}

pub fn brute_force_lambda_with_limit<S: Scalar>(a: &MaxMatrix<S>, limit: usize) -> Result<S> {
    if a.n() > limit {
        return Err(Error::OracleLimitExceeded { n: a.n(), limit });
    }
    let mut best: Option<(S, u32)> = None;
    for_each_simple_cycle(a, |nodes, w| {
        let len = nodes.len() as u32;
        if best.as_ref().is_none_or(|(b, d)| S::cmp_roots(w, len, b, *d).is_gt()) {
            best = Some((w.clone(), len));
        }
    });
    match best {
        None => Ok(S::zero()),
        Some((w, d)) => w.nth_root(d),
    }
}

/// Edges lying on some cycle whose geometric mean equals `λ(A)`, found by
/// cycle enumeration. Test oracle; sorted lexicographically.
pub fn critical_edges_by_enumeration<S: Scalar>(a: &MaxMatrix<S>) -> Result<Vec<(usize, usize)>> {
    if a.n() > ORACLE_LIMIT {
        return Err(Error::OracleLimitExceeded { n: a.n(), limit: ORACLE_LIMIT });
    }
    let mut cycles: Vec<(Vec<usize>, S)> = Vec::new();
    let mut best: Option<(S, u32)> = None;
    for_each_simple_cycle(a, |nodes, w| {
        let len = nodes.len() as u32;
        if best.as_ref().is_none_or(|(b, d)| S::cmp_roots(w, len, b, *d).is_gt()) {
            best = Some((w.clone(), len));
        }
        cycles.push((nodes.to_vec(), w.clone()));
    });
    let Some((bw, bd)) = best else { return Ok(Vec::new()) };
    let eps = a.tolerance();
    let mut edges = Vec::new();
    for (nodes, w) in &cycles {
        let len = nodes.len() as u32;
        let attains = if w.as_exact().is_some() {
            S::cmp_roots(w, len, &bw, bd) == Ordering::Equal
        } else {
            (w.ln() / len as f64 - bw.ln() / bd as f64).abs() <= eps
        };
        if attains {
            for (k, &i) in nodes.iter().enumerate() {
                edges.push((i, nodes[(k + 1) % nodes.len()]));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(edges)
}
