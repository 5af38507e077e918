mod common;

use common::*;
use maxvis::{
    check_visualization, critical_structure, eigencone_basis, in_relative_interior, is_irreducible,
    lift_scaling, preserving_scaling_check, quotient_matrix, star_block_structure, strict_visualizer,
};
use maxvis::{Error, Exact, Method, Preservation, ScalingVector, Visualization};
use num_rational::BigRational;
use proptest::prelude::*;

fn methods(n: usize) -> Vec<Method> {
    let w = BigRational::new(1.into(), (n as i64).into());
    vec![Method::ColumnSum, Method::LogConvex(vec![w; n]), Method::Perron]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_method_strictly_visualizes(a in arb_cyclic(5)) {
        let spec = critical_structure(&a).unwrap();
        for method in methods(a.n()) {
            let x = match strict_visualizer(&a, &method) {
                Err(Error::ReducibleMatrix) => {
                    prop_assert!(!is_irreducible(&a) && method != Method::ColumnSum);
                    continue;
                }
                Err(Error::Unrepresentable(_)) => {
                    // Mixed radicals: check the same weights on the float backend.
                    let f = a.to_float();
                    let x = strict_visualizer(&f, &method).unwrap();
                    let status = check_visualization(&f.diag_similarity(&x).unwrap()).unwrap();
                    prop_assert_eq!(status.status, Visualization::StrictlyVisualized);
                    continue;
                }
                x => x.unwrap(),
            };
            let b = a.diag_similarity(&x).unwrap();
            let status = check_visualization(&b).unwrap();
            prop_assert_eq!(status.status, Visualization::StrictlyVisualized, "{:?}", method);
            for i in 0..a.n() {
                for j in 0..a.n() {
                    if spec.is_critical_edge(i, j) {
                        prop_assert_eq!(b.get(i, j), &spec.lambda);
                    } else {
                        prop_assert!(*b.get(i, j) < spec.lambda);
                    }
                }
            }
            prop_assert!(in_relative_interior(&a, &x).unwrap());
        }
    }

    #[test]
    fn eigenvectors_miss_the_relative_interior(a in arb_cyclic(5)) {
        prop_assume!(is_irreducible(&a));
        let spec = critical_structure(&a).unwrap();
        prop_assume!(!spec.non_critical.is_empty());
        for g in eigencone_basis(&a).unwrap().generators {
            let x = ScalingVector::user(g.into_inner()).unwrap();
            prop_assert!(!in_relative_interior(&a, &x).unwrap());
        }
    }

    #[test]
    fn quotient_has_only_loop_critical_cycles(seed in any::<u64>(), n in 1usize..=6) {
        let a = random_visualized(&mut rng(seed), n, 0.3);
        let qm = quotient_matrix(&a).unwrap();
        prop_assert!(star_block_structure(&a).unwrap());
        let spec = critical_structure(&qm.alpha).unwrap();
        prop_assert_eq!(&spec.lambda, &Exact::one());
        for &(i, j) in &spec.critical_edges {
            prop_assert_eq!(i, j);
        }
        let base = critical_structure(&a).unwrap();
        for mu in 0..qm.m {
            let critical = base.is_critical_node(qm.component_nodes[mu][0]);
            prop_assert_eq!(qm.alpha.get(mu, mu) == &Exact::one(), critical);
            for nu in 0..qm.m {
                prop_assert!(*qm.alpha.get(mu, nu) <= Exact::one());
            }
        }
    }

    #[test]
    fn lifted_visualizers_make_strict(seed in any::<u64>(), n in 1usize..=6) {
        let a = random_visualized(&mut rng(seed), n, 0.3);
        let qm = quotient_matrix(&a).unwrap();
        let xt = strict_visualizer(&qm.alpha, &Method::ColumnSum).unwrap();
        let x = lift_scaling(&qm, xt.as_vector()).unwrap();
        prop_assert_eq!(preserving_scaling_check(&a, &x).unwrap(), Preservation::MakesStrict);
        let status = check_visualization(&a.diag_similarity(&x).unwrap()).unwrap().status;
        prop_assert_eq!(status, Visualization::StrictlyVisualized);
    }

    #[test]
    fn preservation_check_matches_direct_check(seed in any::<u64>(), n in 1usize..=6) {
        let mut r = rng(seed);
        let a = random_visualized(&mut r, n, 0.3);
        let x = if seed % 3 == 0 { ScalingVector::ones(n) } else { random_scaling(&mut r, n) };
        let expected = match check_visualization(&a.diag_similarity(&x).unwrap()).unwrap().status {
            Visualization::NotVisualized => Preservation::Breaks,
            Visualization::Visualized => Preservation::PreservesVisualized,
            Visualization::StrictlyVisualized => Preservation::MakesStrict,
        };
        prop_assert_eq!(preserving_scaling_check(&a, &x).unwrap(), expected);
    }
}
