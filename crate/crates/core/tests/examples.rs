use std::collections::BTreeSet;

use irreg_core::families::{complete, path, star};
use irreg_core::verifier::DEFAULT_ORACLE_BUDGET;
use irreg_core::{
    brute_force_exists, enumerate_abelian_groups, group_irregularity_strength, label_graph,
    predict, spanning_tree_prefer_nonstar, weighted_degrees, AbelianGroup, GroupElement,
    Labelling, OracleVerdict, Prediction, SimpleGraph,
};
use proptest::prelude::*;

fn cyclic(m: u64) -> AbelianGroup {
    AbelianGroup::cyclic(m).unwrap()
}

fn values(xs: &[GroupElement]) -> Vec<u64> {
    xs.iter().map(|x| x.residues()[0]).collect()
}

#[test]
fn star_on_five_over_z5() {
    let c = label_graph(&star(5), &cyclic(5)).unwrap();
    let labels: BTreeSet<u64> = values(c.labelling.labels()).into_iter().collect();
    assert_eq!(labels, BTreeSet::from([1, 2, 3, 4]));
    let degrees = values(&c.report.weighted_degrees);
    assert_eq!(degrees[0], 0);
    assert_eq!(degrees[1..].iter().copied().collect::<BTreeSet<_>>(), labels);
}

#[test]
fn star_on_four_over_z4() {
    let c = label_graph(&star(4), &cyclic(4)).unwrap();
    assert_eq!(values(c.labelling.labels()), vec![0, 1, 2]);
    assert_eq!(values(&c.report.weighted_degrees)[0], 3);
}

#[test]
fn star_on_six_over_z7() {
    let c = label_graph(&star(6), &cyclic(7)).unwrap();
    assert_eq!(values(c.labelling.labels()), vec![1, 5, 0, 3, 4]);
    assert_eq!(values(&c.report.weighted_degrees), vec![6, 1, 5, 0, 3, 4]);
}

#[test]
fn odd_stars_at_strength_use_the_whole_group() {
    for n in (3..=15).step_by(2) {
        let c = label_graph(&star(n), &cyclic(n as u64)).unwrap();
        let degrees = values(&c.report.weighted_degrees);
        assert_eq!(degrees[0], 0);
        assert_eq!(degrees.iter().collect::<BTreeSet<_>>().len(), n);
    }
}

#[test]
fn small_paths_cover_the_group() {
    for n in [4u64, 5] {
        let c = label_graph(&path(n as usize), &cyclic(n)).unwrap();
        let degrees: BTreeSet<u64> = values(&c.report.weighted_degrees).into_iter().collect();
        assert_eq!(degrees, (0..n).collect());
    }
}

#[test]
fn triangle_over_z3() {
    let g = complete(3);
    let c = label_graph(&g, &cyclic(3)).unwrap();
    let chord = g.edge_id(1, 2).unwrap();
    assert!(c.labelling.label(chord).is_zero());
    let degrees: BTreeSet<u64> = values(&c.report.weighted_degrees).into_iter().collect();
    assert_eq!(degrees, BTreeSet::from([0, 1, 2]));
}

#[test]
fn non_tree_edges_stay_zero() {
    for n in 4..=9 {
        let g = complete(n);
        let tree = spanning_tree_prefer_nonstar(&g).unwrap();
        let tree_edges: BTreeSet<usize> = tree.edge_ids().collect();
        let s = group_irregularity_strength(&g).unwrap().value;
        for grp in enumerate_abelian_groups(s).unwrap() {
            let c = label_graph(&g, &grp).unwrap();
            for (e, x) in c.labelling.labels().iter().enumerate() {
                assert!(tree_edges.contains(&e) || x.is_zero());
            }
        }
    }
}

#[test]
fn all_zero_labelling_collides_at_first_two_vertices() {
    let g = path(4);
    let grp = cyclic(5);
    let r = weighted_degrees(&g, &Labelling::zero(&g, &grp), &grp).unwrap();
    assert_eq!(r.collision_witness, Some((0, 1)));
}

#[test]
fn oracle_agrees_with_theory_on_small_graphs() {
    // connected graphs with at most 5 edges and orders in [n, s_g + 3], all <= 9
    for n in 3..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        for mask in 0u32..1 << pairs.len() {
            if mask.count_ones() as usize > 5 {
                continue;
            }
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| pairs[i])
                .collect();
            let g = SimpleGraph::new(n, &edges).unwrap();
            if !g.is_connected() {
                continue;
            }
            let s = group_irregularity_strength(&g).unwrap().value;
            for order in n as u64..=(s + 3).min(9) {
                for grp in enumerate_abelian_groups(order).unwrap() {
                    let predicted = match predict(&g, &grp).unwrap() {
                        Prediction::Constructible => true,
                        Prediction::Impossible(_) => false,
                        Prediction::Open => unreachable!("no open instances this small"),
                    };
                    let found = match brute_force_exists(&g, &grp, DEFAULT_ORACLE_BUDGET)
                        .unwrap()
                        .verdict
                    {
                        OracleVerdict::Exists(lab) => {
                            assert!(weighted_degrees(&g, &lab, &grp).unwrap().is_irregular);
                            true
                        }
                        OracleVerdict::NotExists => false,
                        OracleVerdict::BudgetExceeded => panic!("budget"),
                    };
                    assert_eq!(predicted, found, "{edges:?} over {grp}");
                }
            }
        }
    }
}

fn random_labelling() -> impl Strategy<Value = (Vec<(usize, usize)>, Vec<u64>, Vec<Vec<u64>>)> {
    prop::sample::select(vec![vec![6u64], vec![2, 2, 3], vec![4, 2], vec![10], vec![3, 3]])
        .prop_flat_map(|factors| {
            let rank = factors.len();
            (
                prop::collection::vec((0usize..8, 0usize..8), 1..16),
                Just(factors),
                prop::collection::vec(prop::collection::vec(0u64..100, rank), 16),
            )
        })
}

proptest! {
    #[test]
    fn degree_sum_is_twice_the_label_sum((pairs, factors, raw) in random_labelling()) {
        let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
        prop_assume!(!edges.is_empty());
        let g = SimpleGraph::new(8, &edges).unwrap();
        let grp = AbelianGroup::new(&factors).unwrap();
        let labels: Vec<GroupElement> = raw[..g.edge_count()]
            .iter()
            .map(|r| grp.reduce(&r.iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap())
            .collect();
        let label_sum = labels.iter().fold(grp.zero(), |acc, x| grp.add(&acc, x).unwrap());
        let lab = Labelling::from_labels(&g, &grp, labels).unwrap();
        let r = weighted_degrees(&g, &lab, &grp).unwrap();
        prop_assert_eq!(r.degree_sum.clone(), grp.scalar_mul(2, &label_sum).unwrap());
        prop_assert_eq!(r.is_irregular, r.collision_witness.is_none());
        // order ≡ 2 (mod 4): the Z_2 coordinate of w(G) vanishes
        if grp.order() % 4 == 2 {
            prop_assert!(!grp.is_involution(&r.degree_sum));
        }
    }
}
