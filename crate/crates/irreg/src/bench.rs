//! Wall-clock timing of the path collection sweep on large random trees.

use std::time::{Duration, Instant};

use irreg_core::path_collection::shortest_path_collection;
use irreg_core::{RootedTree, SimpleGraph};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::random_tree;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub marked: usize,
    pub median: Duration,
    /// Median time over the previous row's median.
    pub ratio: Option<f64>,
}

/// Random marked set of even size closest to `frac * n`.
fn marked_set(n: usize, frac: f64, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut k = ((n as f64 * frac).round() as usize).min(n);
    k -= k % 2;
    index::sample(rng, n, k.max(2).min(n - n % 2)).into_vec()
}

/// Same tree with vertices renumbered in BFS order from vertex 0, so the
/// sweep walks memory roughly sequentially.
fn bfs_relabelled(g: &SimpleGraph) -> SimpleGraph {
    let order = RootedTree::bfs(g, 0).expect("tree is connected");
    let mut rank = vec![0; g.vertex_count()];
    for (i, &v) in order.bfs_order().iter().enumerate() {
        rank[v] = i;
    }
    let edges: Vec<_> = g.edges().iter().map(|&(u, v)| (rank[u], rank[v])).collect();
    SimpleGraph::new(g.vertex_count(), &edges).expect("relabelling keeps a tree")
}

fn time_once(tree: &RootedTree, marked: &[usize]) -> Duration {
    let start = Instant::now();
    let c = shortest_path_collection(tree, marked).expect("valid marked set");
    let elapsed = start.elapsed();
    std::hint::black_box(c.total_length);
    elapsed
}

/// Median of `runs` timings of the sweep for each size. Rounds visit every
/// size in turn, after one discarded warm-up round, so background load
/// spreads evenly across sizes.
pub fn spc_timings(sizes: &[usize], frac: f64, runs: usize, seed: u64) -> Vec<BenchRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<(RootedTree, Vec<usize>)> = sizes
        .iter()
        .map(|&n| {
            let g = bfs_relabelled(&random_tree(n.max(2), &mut rng));
            let tree = RootedTree::bfs(&g, 0).expect("tree is connected");
            let marked = marked_set(g.vertex_count(), frac, &mut rng);
            (tree, marked)
        })
        .collect();
    let mut times = vec![Vec::with_capacity(runs); instances.len()];
    for round in 0..=runs.max(1) {
        for (i, (tree, marked)) in instances.iter().enumerate() {
            let t = time_once(tree, marked);
            if round > 0 {
                times[i].push(t);
            }
        }
    }
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for ((tree, marked), mut samples) in instances.iter().zip(times) {
        samples.sort_unstable();
        let median = samples[samples.len() / 2];
        let ratio = rows
            .last()
            .map(|prev| median.as_secs_f64() / prev.median.as_secs_f64().max(1e-12));
        rows.push(BenchRow {
            n: tree.vertex_count(),
            marked: marked.len(),
            median,
            ratio,
        });
    }
    rows
}
