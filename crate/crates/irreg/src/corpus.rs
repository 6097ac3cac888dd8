//! Seeded test corpus: graph families plus random connected graphs and trees.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use irreg_core::{families, SimpleGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const RANDOM_GRAPHS: usize = 50;
pub const RANDOM_TREES: usize = 25;
pub const FAMILY_MAX_N: usize = 12;
pub const TREE_MAX_N: usize = 40;

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// `path`, `cycle`, `star`, `complete`, `random-graph` or `random-tree`.
    pub family: &'static str,
    pub name: String,
    pub graph: SimpleGraph,
}

/// Uniform random labelled tree on `n >= 2` vertices, decoded from a random
/// Prüfer sequence.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> SimpleGraph {
    assert!(n >= 2, "a tree needs two vertices");
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &v in &seq {
        degree[v] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &seq {
        let Reverse(leaf) = leaves.pop().expect("a leaf remains");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.push(Reverse(v));
        }
    }
    let Reverse(a) = leaves.pop().expect("two leaves remain");
    let Reverse(b) = leaves.pop().expect("two leaves remain");
    edges.push((a, b));
    SimpleGraph::new(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Random tree plus each remaining pair independently with probability `p`.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> SimpleGraph {
    let tree = random_tree(n, rng);
    let mut edges = tree.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if tree.edge_id(u, v).is_none() && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    // shuffle so edge ids do not reveal the tree
    edges.shuffle(rng);
    SimpleGraph::new(n, &edges).expect("valid edges")
}

/// Graph families for `3 <= n <= min(12, max_n)`, then 50 random connected
/// graphs with `n <= min(12, max_n)` and 25 random trees with
/// `n <= min(40, max_n)`.
pub fn corpus(seed: u64, max_n: usize) -> Vec<CorpusEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let family_max = FAMILY_MAX_N.min(max_n);
    for n in 3..=family_max {
        let graphs: [(&'static str, SimpleGraph); 4] = [
            ("path", families::path(n)),
            ("cycle", families::cycle(n)),
            ("star", families::star(n)),
            ("complete", families::complete(n)),
        ];
        for (family, graph) in graphs {
            out.push(CorpusEntry {
                family,
                name: format!("{family}-{n}"),
                graph,
            });
        }
    }
    if family_max >= 3 {
        for i in 0..RANDOM_GRAPHS {
            let n = rng.gen_range(3..=family_max);
            let p = rng.gen_range(0.0..0.6);
            out.push(CorpusEntry {
                family: "random-graph",
                name: format!("random-graph-{i}-n{n}"),
                graph: random_connected(n, p, &mut rng),
            });
        }
    }
    let tree_max = TREE_MAX_N.min(max_n);
    if tree_max >= 3 {
        for i in 0..RANDOM_TREES {
            let n = rng.gen_range(3..=tree_max);
            out.push(CorpusEntry {
                family: "random-tree",
                name: format!("random-tree-{i}-n{n}"),
                graph: random_tree(n, &mut rng),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_deterministic_and_connected() {
        let a = corpus(7, 40);
        let b = corpus(7, 40);
        assert_eq!(a.len(), 4 * 10 + RANDOM_GRAPHS + RANDOM_TREES);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.graph, y.graph);
            assert!(x.graph.is_connected());
            assert!(x.graph.vertex_count() >= 3);
        }
        assert!(a
            .iter()
            .filter(|e| e.family == "random-tree")
            .all(|e| e.graph.is_tree() && e.graph.vertex_count() <= 40));
        assert_ne!(
            corpus(8, 40).last().unwrap().graph,
            a.last().unwrap().graph
        );
    }

    #[test]
    fn max_n_caps_sizes() {
        assert!(corpus(1, 9).iter().all(|e| e.graph.vertex_count() <= 9));
    }

    #[test]
    fn large_random_tree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let t = random_tree(10_000, &mut rng);
        assert!(t.is_tree());
    }
}
