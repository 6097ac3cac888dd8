//! Simple undirected graphs, rooted spanning trees and edge labellings.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::group::{AbelianGroup, GroupElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree")]
    NotATree,
    #[error("path endpoints coincide at vertex {0}")]
    SameEndpoints(usize),
    #[error("labelling has {found} labels, graph has {expected} edges")]
    LabelCountMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    /// Per vertex, `(neighbor, edge id)` sorted by neighbor.
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl SimpleGraph {
    /// Builds a graph on `n` vertices. Edges are normalized to `(min, max)`;
    /// repeated edges are dropped, keeping the first occurrence's position.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adjacency: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n];
        let mut edges = Vec::with_capacity(edge_list.len());
        for &(u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            edges.push((a, b));
        }
        // dedup without hashing: sort edge ids by endpoints
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.sort_by_key(|&i| (edges[i], i));
        let mut keep = alloc::vec![true; edges.len()];
        for w in order.windows(2) {
            if edges[w[0]] == edges[w[1]] {
                keep[w[1]] = false;
            }
        }
        let edges: Vec<(usize, usize)> = edges
            .into_iter()
            .zip(keep)
            .filter_map(|(e, k)| k.then_some(e))
            .collect();
        for (id, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, id));
            adjacency[b].push((a, id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbor, edge id)` pairs of `v`, sorted by neighbor.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = alloc::vec![false; self.n];
        seen[0] = true;
        let mut count = 1;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.n
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() == self.n - 1 && self.is_connected()
    }

    /// The center of a star `K_{1,n-1}` with `n >= 3`, if this graph is one.
    pub fn star_center(&self) -> Option<usize> {
        if self.n < 3 || self.edges.len() != self.n - 1 {
            return None;
        }
        (0..self.n).find(|&v| self.degree(v) == self.n - 1)
    }

    pub fn is_star(&self) -> bool {
        self.star_center().is_some()
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|i| list[i].1)
    }
}

/// A spanning tree of a [`SimpleGraph`], rooted and 2-colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    /// `parent[root] == root`.
    parent: Vec<usize>,
    /// Graph edge id joining `v` to its parent; `None` at the root.
    parent_edge: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    depth: Vec<usize>,
    bfs_order: Vec<usize>,
    /// 1 or 2; the root has color 1.
    color: Vec<u8>,
    color_class_sizes: (usize, usize),
    is_star: bool,
}

impl RootedTree {
    /// BFS tree of a connected graph from `root`, neighbors in ascending id.
    pub fn bfs(g: &SimpleGraph, root: usize) -> Result<Self, GraphError> {
        let n = g.vertex_count();
        if root >= n {
            return Err(GraphError::VertexOutOfRange { vertex: root, n });
        }
        let mut tree_edges = Vec::with_capacity(n.saturating_sub(1));
        let mut seen = alloc::vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(w, id) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    tree_edges.push(id);
                    queue.push_back(w);
                }
            }
        }
        if tree_edges.len() + 1 != n {
            return Err(GraphError::Disconnected);
        }
        Ok(Self::from_edge_ids(g, &tree_edges, root))
    }

    /// Roots the tree formed by the given graph edges (assumed to span `g`
    /// and be acyclic) at `root`.
    fn from_edge_ids(g: &SimpleGraph, tree_edges: &[usize], root: usize) -> Self {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = alloc::vec![Vec::new(); n];
        for &id in tree_edges {
            let (a, b) = g.edges()[id];
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut parent = alloc::vec![usize::MAX; n];
        let mut parent_edge = alloc::vec![None; n];
        let mut children = alloc::vec![Vec::new(); n];
        let mut depth = alloc::vec![0; n];
        let mut color = alloc::vec![0u8; n];
        let mut bfs_order = Vec::with_capacity(n);
        parent[root] = root;
        color[root] = 1;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            bfs_order.push(v);
            for &(w, id) in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    parent_edge[w] = Some(id);
                    depth[w] = depth[v] + 1;
                    color[w] = 3 - color[v];
                    children[v].push(w);
                    queue.push_back(w);
                }
            }
        }
        let ones = color.iter().filter(|&&c| c == 1).count();
        let is_star = n >= 3 && (0..n).any(|v| adj[v].len() == n - 1);
        Self {
            root,
            parent,
            parent_edge,
            children,
            depth,
            bfs_order,
            color,
            color_class_sizes: (ones, n - ones),
            is_star,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        self.parent_edge[v]
    }

    /// Children of `v` in ascending id.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn bfs_order(&self) -> &[usize] {
        &self.bfs_order
    }

    pub fn color(&self, v: usize) -> u8 {
        self.color[v]
    }

    pub fn color_class_sizes(&self) -> (usize, usize) {
        self.color_class_sizes
    }

    /// Vertices of color `c` (1 or 2) in ascending id.
    pub fn color_class(&self, c: u8) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.color[v] == c)
            .collect()
    }

    pub fn is_star(&self) -> bool {
        self.is_star
    }

    pub fn tree_degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(v != self.root)
    }

    /// Graph edge ids of the tree edges, in BFS order of their lower endpoint.
    pub fn edge_ids(&self) -> impl Iterator<Item = usize> + '_ {
        self.bfs_order.iter().filter_map(|&v| self.parent_edge[v])
    }

    pub fn distance(&self, mut a: usize, mut b: usize) -> usize {
        let mut d = 0;
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
            d += 1;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
            d += 1;
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            d += 2;
        }
        d
    }

    /// The unique tree path from `x1` to `x2`, both included.
    pub fn path(&self, x1: usize, x2: usize) -> Result<Vec<usize>, GraphError> {
        let n = self.vertex_count();
        for v in [x1, x2] {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        if x1 == x2 {
            return Err(GraphError::SameEndpoints(x1));
        }
        let (mut a, mut b) = (x1, x2);
        let mut front = alloc::vec![a];
        let mut back = alloc::vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
            front.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
            back.push(b);
        }
        while a != b {
            a = self.parent[a];
            b = self.parent[b];
            front.push(a);
            back.push(b);
        }
        back.pop();
        front.extend(back.into_iter().rev());
        Ok(front)
    }

    /// Graph edge id of the tree edge joining adjacent vertices `a` and `b`.
    fn link(&self, a: usize, b: usize) -> usize {
        let child = if self.parent[a] == b { a } else { b };
        debug_assert!(self.parent[child] == a || self.parent[child] == b);
        self.parent_edge[child].expect("root has no parent edge")
    }
}

/// Spanning tree used by the labeller: BFS from vertex 0, repaired by one
/// edge swap when BFS produced a star but the graph is not a star.
pub fn spanning_tree_prefer_nonstar(g: &SimpleGraph) -> Result<RootedTree, GraphError> {
    let bfs = RootedTree::bfs(g, 0)?;
    let n = g.vertex_count();
    if !bfs.is_star() || n < 4 || g.is_star() {
        return Ok(bfs);
    }
    let center = (0..n)
        .find(|&v| bfs.tree_degree(v) == n - 1)
        .expect("star tree has a center");
    // any edge missing from the star tree joins two leaves
    let (u, v) = g
        .edges()
        .iter()
        .copied()
        .find(|&(a, b)| a != center && b != center)
        .expect("non-star graph has a leaf-leaf edge");
    let dropped = g.edge_id(center, v).expect("star edge");
    let added = g.edge_id(u, v).expect("leaf-leaf edge");
    let edges: Vec<usize> = bfs
        .edge_ids()
        .map(|id| if id == dropped { added } else { id })
        .collect();
    Ok(RootedTree::from_edge_ids(g, &edges, 0))
}

/// Edge labels over a fixed graph, indexed by graph edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labelling {
    labels: Vec<GroupElement>,
}

impl Labelling {
    pub fn zero(g: &SimpleGraph, grp: &AbelianGroup) -> Self {
        Self {
            labels: alloc::vec![grp.zero(); g.edge_count()],
        }
    }

    pub fn from_labels(
        g: &SimpleGraph,
        grp: &AbelianGroup,
        labels: Vec<GroupElement>,
    ) -> Result<Self, crate::Error> {
        if labels.len() != g.edge_count() {
            return Err(GraphError::LabelCountMismatch {
                expected: g.edge_count(),
                found: labels.len(),
            }
            .into());
        }
        for x in &labels {
            grp.check(x)?;
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[GroupElement] {
        &self.labels
    }

    pub fn label(&self, edge: usize) -> &GroupElement {
        &self.labels[edge]
    }

    pub(crate) fn set(&mut self, edge: usize, x: GroupElement) {
        self.labels[edge] = x;
    }

    /// `φ(x1, x2) = a`: adds `a` to the odd-position edges and `-a` to the
    /// even-position edges of the tree path from `x1`. Only the weighted
    /// degrees of `x1` and `x2` change.
    pub fn apply_phi(
        &mut self,
        grp: &AbelianGroup,
        tree: &RootedTree,
        x1: usize,
        x2: usize,
        a: &GroupElement,
    ) -> Result<(), crate::Error> {
        grp.check(a)?;
        let path = tree.path(x1, x2)?;
        self.apply_phi_along(grp, tree, &path, a);
        Ok(())
    }

    pub(crate) fn apply_phi_along(
        &mut self,
        grp: &AbelianGroup,
        tree: &RootedTree,
        path: &[usize],
        a: &GroupElement,
    ) {
        if a.is_zero() {
            return;
        }
        let minus_a = grp.negate(a);
        for (i, w) in path.windows(2).enumerate() {
            let edge = tree.link(w[0], w[1]);
            let delta = if i % 2 == 0 { a } else { &minus_a };
            grp.add_assign(&mut self.labels[edge], delta);
        }
    }
}
