use petgraph::algo::{maximum_matching, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex, UnGraph};

use crate::matrix::MaxMatrix;
use crate::scalar::Scalar;

/// Strongly connected components of the digraph on `nodes` with the given
/// edges. Each component is sorted, and components are ordered by their
/// least node.
pub(crate) fn strong_components(
    nodes: &[usize],
    edges: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<Vec<usize>> {
    let mut graph = DiGraph::<usize, ()>::with_capacity(nodes.len(), 0);
    let mut index = std::collections::HashMap::with_capacity(nodes.len());
    for &v in nodes {
        index.insert(v, graph.add_node(v));
    }
    for (u, v) in edges {
        graph.add_edge(index[&u], index[&v], ());
    }
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&graph)
        .into_iter()
        .map(|c| {
            let mut c: Vec<usize> = c.into_iter().map(|ix: NodeIndex| graph[ix]).collect();
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

/// Components of the digraph of `A` (edge `i → j` iff `a_ij > 0`).
pub(crate) fn matrix_components<S: Scalar>(a: &MaxMatrix<S>) -> Vec<Vec<usize>> {
    let n = a.n();
    let nodes: Vec<usize> = (0..n).collect();
    let edges = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| a.has_edge(i, j));
    strong_components(&nodes, edges)
}

/// `A` is irreducible when its digraph is strongly connected.
pub fn is_irreducible<S: Scalar>(a: &MaxMatrix<S>) -> bool {
    matrix_components(a).len() == 1
}

/// `true` when the bipartite support graph (row `i` to column `j` iff
/// `a_ij > 0`) has a perfect matching, i.e. some permutation has positive
/// weight.
pub(crate) fn has_perfect_matching<S: Scalar>(a: &MaxMatrix<S>) -> bool {
    let n = a.n();
    let mut graph = UnGraph::<(), ()>::with_capacity(2 * n, 0);
    let nodes: Vec<NodeIndex> = (0..2 * n).map(|_| graph.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if a.has_edge(i, j) {
                graph.add_edge(nodes[i], nodes[n + j], ());
            }
        }
    }
    maximum_matching(&graph).is_perfect()
}
