//! Shortest Path Collection on trees: pair up an even set of marked vertices
//! so the connecting tree paths have minimum total length.
//!
//! [`shortest_path_collection`] is the greedy bottom-up sweep; its output is
//! certified by [`spc_lower_bound`], the sum over vertices of the number of
//! child subtrees holding an odd number of marked vertices. The exhaustive
//! [`matching_oracle`] is an independent reference for small instances.

use alloc::vec::Vec;

use crate::graph::RootedTree;

/// Largest marked set [`matching_oracle`] accepts.
pub const MAX_ORACLE_MARKED: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpcError {
    #[error("marked set is empty")]
    Empty,
    #[error("marked set has odd size {0}")]
    OddSize(usize),
    #[error("marked vertex {vertex} is out of range for a tree on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} is marked twice")]
    Duplicate(usize),
    #[error("exhaustive matching supports at most {max} marked vertices, got {size}")]
    TooLarge { size: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathCollection {
    /// Paired marked vertices, in the order the sweep closed them.
    pub pairs: Vec<(usize, usize)>,
    /// `paths[i]` runs from `pairs[i].0` to `pairs[i].1`.
    pub paths: Vec<Vec<usize>>,
    pub total_length: usize,
}

/// Sweep state after the last vertex was processed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpcState {
    /// Open paths keyed by their upper end `b(Q)`; the value is the marked
    /// end `a(Q)`, a descendant of the key.
    pub pending: Vec<Option<usize>>,
    /// `q_flag[v]`: an open path ended at `v` right after `v` was processed.
    pub q_flag: Vec<bool>,
}

fn marked_mask(tree: &RootedTree, marked: &[usize]) -> Result<Vec<bool>, SpcError> {
    if marked.is_empty() {
        return Err(SpcError::Empty);
    }
    if marked.len() % 2 == 1 {
        return Err(SpcError::OddSize(marked.len()));
    }
    let n = tree.vertex_count();
    let mut mask = alloc::vec![false; n];
    for &v in marked {
        if v >= n {
            return Err(SpcError::OutOfRange { vertex: v, n });
        }
        if core::mem::replace(&mut mask[v], true) {
            return Err(SpcError::Duplicate(v));
        }
    }
    Ok(mask)
}

pub fn shortest_path_collection(
    tree: &RootedTree,
    marked: &[usize],
) -> Result<PathCollection, SpcError> {
    shortest_path_collection_with_state(tree, marked).map(|(c, _)| c)
}

/// Path from descendant `a` up to `top`, then down to descendant `b` (if
/// any). Appends the vertices to `out`.
fn climb(tree: &RootedTree, a: usize, top: usize, b: Option<usize>, out: &mut Vec<usize>) {
    let mut v = a;
    while v != top {
        out.push(v);
        v = tree.parent(v);
    }
    out.push(top);
    if let Some(b) = b {
        let mark = out.len();
        let mut v = b;
        while v != top {
            out.push(v);
            v = tree.parent(v);
        }
        out[mark..].reverse();
    }
}

/// Runs the sweep and also returns its final state.
pub fn shortest_path_collection_with_state(
    tree: &RootedTree,
    marked: &[usize],
) -> Result<(PathCollection, SpcState), SpcError> {
    let in_a = marked_mask(tree, marked)?;
    let n = tree.vertex_count();
    let mut state = SpcState {
        pending: alloc::vec![None; n],
        q_flag: alloc::vec![false; n],
    };
    let mut pairs = Vec::with_capacity(marked.len() / 2);
    let mut paths = Vec::with_capacity(marked.len() / 2);
    let mut total_length = 0;
    let mut ready = Vec::new();
    #[cfg(debug_assertions)]
    let mut subtree_marked = alloc::vec![0usize; n];

    let mut close = |a: usize, v: usize, b: Option<usize>, pairs: &mut Vec<(usize, usize)>| {
        let mut path = Vec::new();
        climb(tree, a, v, b, &mut path);
        total_length += path.len() - 1;
        pairs.push((a, *path.last().expect("non-empty path")));
        paths.push(path);
    };

    // leaves first, root last
    for &v in tree.bfs_order().iter().rev() {
        ready.clear();
        ready.extend(
            tree.children(v)
                .iter()
                .copied()
                .filter(|&c| state.q_flag[c]),
        );
        for chunk in ready.chunks_exact(2) {
            let a = state.pending[chunk[0]].take().expect("open path");
            let b = state.pending[chunk[1]].take().expect("open path");
            close(a, v, Some(b), &mut pairs);
        }
        if ready.len() % 2 == 1 {
            let last = *ready.last().expect("odd count");
            let a = state.pending[last].take().expect("open path");
            if in_a[v] {
                close(a, v, None, &mut pairs);
            } else {
                state.pending[v] = Some(a);
                state.q_flag[v] = true;
            }
        } else if in_a[v] {
            state.pending[v] = Some(v);
            state.q_flag[v] = true;
        }
        #[cfg(debug_assertions)]
        {
            subtree_marked[v] = usize::from(in_a[v])
                + tree
                    .children(v)
                    .iter()
                    .map(|&c| subtree_marked[c])
                    .sum::<usize>();
            debug_assert_eq!(state.q_flag[v], subtree_marked[v] % 2 == 1);
        }
    }
    debug_assert!(!state.q_flag[tree.root()], "even marked set closes at the root");
    Ok((
        PathCollection {
            pairs,
            paths,
            total_length,
        },
        state,
    ))
}

/// `Σ_v k(v)`, where `k(v)` counts the children of `v` whose subtree holds
/// an odd number of marked vertices.
pub fn spc_lower_bound(tree: &RootedTree, marked: &[usize]) -> Result<usize, SpcError> {
    let in_a = marked_mask(tree, marked)?;
    let mut count = alloc::vec![0usize; tree.vertex_count()];
    let mut bound = 0;
    for &v in tree.bfs_order().iter().rev() {
        count[v] = usize::from(in_a[v]);
        for &c in tree.children(v) {
            count[v] += count[c];
            bound += count[c] % 2;
        }
    }
    Ok(bound)
}

/// Exact optimum by enumerating every perfect matching of the marked set
/// under tree distance.
pub fn matching_oracle(tree: &RootedTree, marked: &[usize]) -> Result<usize, SpcError> {
    marked_mask(tree, marked)?;
    if marked.len() > MAX_ORACLE_MARKED {
        return Err(SpcError::TooLarge {
            size: marked.len(),
            max: MAX_ORACLE_MARKED,
        });
    }
    let k = marked.len();
    let mut dist = alloc::vec![0usize; k * k];
    for i in 0..k {
        for j in 0..k {
            dist[i * k + j] = tree.distance(marked[i], marked[j]);
        }
    }
    fn best(dist: &[usize], k: usize, used: u32) -> usize {
        let Some(first) = (0..k).find(|&i| used >> i & 1 == 0) else {
            return 0;
        };
        (first + 1..k)
            .filter(|&j| used >> j & 1 == 0)
            .map(|j| dist[first * k + j] + best(dist, k, used | 1 << first | 1 << j))
            .min()
            .unwrap_or(usize::MAX)
    }
    Ok(best(&dist, k, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SimpleGraph;
    use alloc::collections::BTreeSet;
    use alloc::vec;
    use proptest::prelude::*;

    fn tree(n: usize, edges: &[(usize, usize)]) -> RootedTree {
        RootedTree::bfs(&SimpleGraph::new(n, edges).unwrap(), 0).unwrap()
    }

    #[test]
    fn path_example() {
        let t = tree(4, &[(0, 1), (1, 2), (2, 3)]);
        let c = shortest_path_collection(&t, &[0, 3]).unwrap();
        assert_eq!(c.total_length, 3);
        assert_eq!(c.pairs.len(), 1);
        let (a, b) = c.pairs[0];
        assert_eq!(BTreeSet::from([a, b]), BTreeSet::from([0, 3]));
        assert_eq!(spc_lower_bound(&t, &[0, 3]).unwrap(), 3);
        assert_eq!(matching_oracle(&t, &[0, 3]).unwrap(), 3);
    }

    #[test]
    fn star_example() {
        let t = tree(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let a = [1, 2, 3, 4];
        let c = shortest_path_collection(&t, &a).unwrap();
        assert_eq!(c.pairs.len(), 2);
        assert_eq!(c.total_length, 4);
        assert_eq!(spc_lower_bound(&t, &a).unwrap(), 4);
        assert_eq!(matching_oracle(&t, &a).unwrap(), 4);
    }

    #[test]
    fn adjacent_pair() {
        let t = tree(3, &[(0, 1), (1, 2)]);
        assert_eq!(spc_lower_bound(&t, &[1, 2]).unwrap(), 1);
        let c = shortest_path_collection(&t, &[2, 1]).unwrap();
        assert_eq!(c.paths, vec![vec![2, 1]]);
    }

    #[test]
    fn rejects_bad_marked_sets() {
        let t = tree(3, &[(0, 1), (1, 2)]);
        assert_eq!(shortest_path_collection(&t, &[]), Err(SpcError::Empty));
        assert_eq!(spc_lower_bound(&t, &[0]), Err(SpcError::OddSize(1)));
        assert_eq!(
            shortest_path_collection(&t, &[0, 7]),
            Err(SpcError::OutOfRange { vertex: 7, n: 3 })
        );
        assert_eq!(
            matching_oracle(&t, &[1, 1]),
            Err(SpcError::Duplicate(1))
        );
        let big = tree(14, &(1..14).map(|i| (0, i)).collect::<Vec<_>>());
        assert!(matches!(
            matching_oracle(&big, &(0..14).collect::<Vec<_>>()),
            Err(SpcError::TooLarge { size: 14, .. })
        ));
    }

    fn random_instance() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
        (2usize..=20).prop_flat_map(|n| {
            (
                prop::collection::vec(0usize..1000, n - 1),
                prop::sample::subsequence((0..n).collect::<Vec<_>>(), 2..=n.min(10)),
            )
        })
    }

    proptest! {
        #[test]
        fn sweep_is_optimal_and_structurally_sound((seeds, mut marked) in random_instance()) {
            if marked.len() % 2 == 1 {
                marked.pop();
            }
            prop_assume!(!marked.is_empty());
            let n = seeds.len() + 1;
            let edges: Vec<_> = seeds.iter().enumerate().map(|(i, &s)| (s % (i + 1), i + 1)).collect();
            let g = SimpleGraph::new(n, &edges).unwrap();
            let t = RootedTree::bfs(&g, 0).unwrap();
            let (c, state) = shortest_path_collection_with_state(&t, &marked).unwrap();
            let bound = spc_lower_bound(&t, &marked).unwrap();
            prop_assert_eq!(c.total_length, bound);
            prop_assert_eq!(c.total_length, matching_oracle(&t, &marked).unwrap());

            // pairs partition the marked set
            let mut seen = BTreeSet::new();
            for &(a, b) in &c.pairs {
                prop_assert!(seen.insert(a) && seen.insert(b));
            }
            prop_assert_eq!(seen, marked.iter().copied().collect::<BTreeSet<_>>());

            // each path is the tree path between its pair; paths are edge-disjoint
            let mut used = BTreeSet::new();
            let mut total = 0;
            for (path, &(a, b)) in c.paths.iter().zip(&c.pairs) {
                prop_assert_eq!(path, &t.path(a, b).unwrap());
                total += path.len() - 1;
                for w in path.windows(2) {
                    prop_assert!(used.insert(g.edge_id(w[0], w[1]).unwrap()));
                }
            }
            prop_assert_eq!(total, c.total_length);

            // q(v) is the parity of marked vertices below v
            let mut count = vec![0usize; n];
            for &v in t.bfs_order().iter().rev() {
                count[v] = usize::from(marked.contains(&v))
                    + t.children(v).iter().map(|&c| count[c]).sum::<usize>();
                prop_assert_eq!(state.q_flag[v], count[v] % 2 == 1);
            }
            prop_assert!(state.pending.iter().all(Option::is_none));
        }
    }
}
