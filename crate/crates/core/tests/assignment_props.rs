mod common;

use std::collections::BTreeSet;

use common::*;
use maxvis::assignment::visualize_with_permutation;
use maxvis::{
    brute_force_assignment, critical_structure, maximal_permutation, maximal_permutations,
    visualize_assignment, Exact, MaxMatrix, Scalar,
};
use proptest::prelude::*;

/// Few distinct values, so that maximal permutations are often tied.
fn arb_tied(max_n: usize) -> impl Strategy<Value = MaxMatrix<Exact>> {
    let entry = prop_oneof![Just((0, 1)), Just((1, 1)), Just((2, 1)), Just((1, 2))];
    (1..=max_n).prop_flat_map(move |n| {
        proptest::collection::vec(entry.clone(), n * n)
            .prop_map(move |v| MaxMatrix::from_fn(n, |i, j| q(v[i * n + j].0, v[i * n + j].1)))
    })
}

fn ones(m: &MaxMatrix<Exact>) -> BTreeSet<(usize, usize)> {
    let n = m.n();
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| m.get(i, j) == &Exact::one()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn hungarian_matches_enumeration(a in arb_matrix(6)) {
        match (maximal_permutation(&a), brute_force_assignment(&a)) {
            (Ok(p), Ok(b)) => {
                prop_assert_eq!(&p.weight, &b.weight);
                let recomputed = (0..a.n()).fold(Exact::one(), |w, i| w.mul(a.get(i, p.map[i])));
                prop_assert_eq!(recomputed, p.weight);
            }
            (Err(_), Err(_)) => {}
            (p, b) => prop_assert!(false, "disagree: {:?} vs {:?}", p, b),
        }
    }

    #[test]
    fn result_has_ones_exactly_on_maximal_permutations(a in arb_tied(5)) {
        let Ok(v) = visualize_assignment(&a) else { return Ok(()) };
        let b = &v.strongly_definite_form;
        for i in 0..a.n() {
            prop_assert_eq!(b.get(i, i), &Exact::one());
        }
        prop_assert_eq!(critical_structure(b).unwrap().lambda, Exact::one());
        prop_assert!(v.result.rows().flatten().all(|x| *x <= Exact::one()));
        let support: BTreeSet<_> = maximal_permutations(&a)
            .unwrap()
            .iter()
            .flat_map(|p| p.map.iter().copied().enumerate().collect::<Vec<_>>())
            .collect();
        prop_assert_eq!(ones(&v.result), support);
        // The two-sided scaling reproduces the result.
        for i in 0..a.n() {
            for j in 0..a.n() {
                let scaled = v.row_scaling[i].mul(a.get(i, j)).mul(v.x.get(j));
                prop_assert_eq!(&scaled, v.result.get(i, j));
            }
        }
    }

    #[test]
    fn ones_do_not_depend_on_the_tie_break(a in arb_tied(5)) {
        let Ok(all) = maximal_permutations(&a) else { return Ok(()) };
        let sets: BTreeSet<_> = all
            .into_iter()
            .map(|p| ones(&visualize_with_permutation(&a, p).unwrap().result))
            .collect();
        prop_assert_eq!(sets.len(), 1);
    }
}

#[test]
fn non_maximal_permutation_is_rejected() {
    let a = exact_rows(&[&[(2, 1), (1, 1)], &[(1, 1), (2, 1)]]);
    let swap = maxvis::Permutation::of(&a, vec![1, 0]);
    assert!(visualize_with_permutation(&a, swap).is_err());
}
