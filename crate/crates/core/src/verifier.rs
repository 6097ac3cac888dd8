//! Checks that do not trust the labeller: weighted degrees, an exhaustive
//! search for irregular labellings, and enumeration of Abelian groups.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::arith::factorize;
use crate::graph::{Labelling, SimpleGraph};
use crate::group::{AbelianGroup, GroupElement, GroupError};
use crate::labeller::{label_graph, predict, CertifiedLabelling, LabelError, Obstruction, Prediction};

/// Node budget used when callers do not pick one.
pub const DEFAULT_ORACLE_BUDGET: u64 = 100_000_000;

/// Largest group order whose addition table the oracle precomputes.
const TABLE_LIMIT: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub weighted_degrees: Vec<GroupElement>,
    pub is_irregular: bool,
    /// First repeated degree in vertex order, as `(earlier, later)`.
    pub collision_witness: Option<(usize, usize)>,
    pub degree_sum: GroupElement,
}

pub fn weighted_degrees(
    g: &SimpleGraph,
    lab: &Labelling,
    grp: &AbelianGroup,
) -> Result<DegreeReport, crate::Error> {
    if lab.labels().len() != g.edge_count() {
        return Err(crate::graph::GraphError::LabelCountMismatch {
            expected: g.edge_count(),
            found: lab.labels().len(),
        }
        .into());
    }
    let mut degrees = alloc::vec![grp.zero(); g.vertex_count()];
    for (&(u, v), x) in g.edges().iter().zip(lab.labels()) {
        degrees[u] = grp.add(&degrees[u], x)?;
        degrees[v] = grp.add(&degrees[v], x)?;
    }
    let mut first_seen = BTreeMap::new();
    let mut collision_witness = None;
    let mut degree_sum = grp.zero();
    for (v, d) in degrees.iter().enumerate() {
        degree_sum = grp.add(&degree_sum, d)?;
        if let Some(&u) = first_seen.get(d) {
            collision_witness.get_or_insert((u, v));
        } else {
            first_seen.insert(d.clone(), v);
        }
    }
    Ok(DegreeReport {
        weighted_degrees: degrees,
        is_irregular: collision_witness.is_none(),
        collision_witness,
        degree_sum,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    Exists(Labelling),
    NotExists,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub verdict: OracleVerdict,
    /// Label choices tried; for `NotExists` this is the size of the
    /// exhausted search tree.
    pub nodes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("group order {0} is too large for exhaustive search")]
    GroupTooLarge(u64),
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    grp: &'a AbelianGroup,
    k: u32,
    table: Option<Vec<u32>>,
    edges: Vec<(usize, usize)>,
    /// Vertices whose last incident edge sits at each position.
    completes_at: Vec<Vec<usize>>,
    deg: Vec<u32>,
    used: Vec<bool>,
    labels: Vec<u32>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn add(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.table {
            return t[a as usize * self.k as usize + b as usize];
        }
        let x = self.grp.element_at(u64::from(a));
        let y = self.grp.element_at(u64::from(b));
        self.grp.index_of(&self.grp.plus(&x, &y)) as u32
    }

    fn dfs(&mut self, pos: usize) -> Step {
        if pos == self.edges.len() {
            return Step::Found;
        }
        let (u, v) = self.edges[pos];
        let (du, dv) = (self.deg[u], self.deg[v]);
        for x in 0..self.k {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            self.deg[u] = self.add(du, x);
            self.deg[v] = self.add(dv, x);
            let mut marked = 0;
            let done = self.completes_at[pos].len();
            while marked < done {
                let d = self.deg[self.completes_at[pos][marked]] as usize;
                if self.used[d] {
                    break;
                }
                self.used[d] = true;
                marked += 1;
            }
            if marked == done {
                self.labels[pos] = x;
                match self.dfs(pos + 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            for i in 0..marked {
                let d = self.deg[self.completes_at[pos][i]] as usize;
                self.used[d] = false;
            }
        }
        self.deg[u] = du;
        self.deg[v] = dv;
        Step::Exhausted
    }
}

/// Edge order that finishes vertices early: edges are listed as BFS reaches
/// their first endpoint.
fn search_order(g: &SimpleGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut listed = alloc::vec![false; g.edge_count()];
    let mut seen = alloc::vec![false; n];
    let mut order = Vec::with_capacity(g.edge_count());
    let mut queue = alloc::collections::VecDeque::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in g.neighbors(v) {
                if !core::mem::replace(&mut listed[e], true) {
                    order.push(e);
                }
                if !core::mem::replace(&mut seen[w], true) {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

/// Exhaustive search for a `grp`-irregular labelling of `g`, pruning as soon
/// as two finished vertices share a degree. Gives up after `budget` label
/// choices.
pub fn brute_force_exists(
    g: &SimpleGraph,
    grp: &AbelianGroup,
    budget: u64,
) -> Result<OracleReport, OracleError> {
    let k = grp.order();
    if k > u64::from(u32::MAX) {
        return Err(OracleError::GroupTooLarge(k));
    }
    let n = g.vertex_count();
    if n as u64 > k {
        return Ok(OracleReport {
            verdict: OracleVerdict::NotExists,
            nodes: 0,
        });
    }
    let order = search_order(g);
    let mut position = alloc::vec![usize::MAX; g.edge_count()];
    for (i, &e) in order.iter().enumerate() {
        position[e] = i;
    }
    let mut completes_at = alloc::vec![Vec::new(); order.len()];
    let mut isolated = 0;
    for v in 0..n {
        match g.neighbors(v).iter().map(|&(_, e)| position[e]).max() {
            Some(last) => completes_at[last].push(v),
            None => isolated += 1,
        }
    }
    // every isolated vertex has degree 0
    if isolated > 1 {
        return Ok(OracleReport {
            verdict: OracleVerdict::NotExists,
            nodes: 0,
        });
    }
    let table = (k <= TABLE_LIMIT).then(|| {
        let mut t = Vec::with_capacity((k * k) as usize);
        for a in 0..k {
            let x = grp.element_at(a);
            for b in 0..k {
                t.push(grp.index_of(&grp.plus(&x, &grp.element_at(b))) as u32);
            }
        }
        t
    });
    let mut search = Search {
        grp,
        k: k as u32,
        table,
        edges: order.iter().map(|&e| g.edges()[e]).collect(),
        completes_at,
        deg: alloc::vec![0; n],
        used: alloc::vec![false; k as usize],
        labels: alloc::vec![0; order.len()],
        nodes: 0,
        budget,
    };
    if isolated == 1 {
        search.used[0] = true;
    }
    let verdict = match search.dfs(0) {
        Step::Found => {
            let mut labels = alloc::vec![grp.zero(); g.edge_count()];
            for (i, &e) in order.iter().enumerate() {
                labels[e] = grp.element_at(u64::from(search.labels[i]));
            }
            let lab = Labelling::from_labels(g, grp, labels).expect("labels come from the group");
            OracleVerdict::Exists(lab)
        }
        Step::Exhausted => OracleVerdict::NotExists,
        Step::OutOfBudget => OracleVerdict::BudgetExceeded,
    };
    Ok(OracleReport {
        verdict,
        nodes: search.nodes.min(budget),
    })
}

fn partitions(e: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if e == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=e.min(max)).rev() {
        prefix.push(part);
        partitions(e - part, part, prefix, out);
        prefix.pop();
    }
}

/// Every Abelian group of order `m` up to isomorphism, in primary-invariant
/// form: primes ascending, and for each prime the partitions of its exponent
/// from `[e]` down to `[1, .., 1]`.
pub fn enumerate_abelian_groups(m: u64) -> Result<Vec<AbelianGroup>, GroupError> {
    if m < 2 {
        return Err(GroupError::FactorTooSmall { index: 0, order: m });
    }
    let mut shapes: Vec<Vec<u64>> = alloc::vec![Vec::new()];
    for (p, e) in factorize(m) {
        let mut parts = Vec::new();
        partitions(e, e, &mut Vec::new(), &mut parts);
        let mut next = Vec::with_capacity(shapes.len() * parts.len());
        for shape in &shapes {
            for partition in &parts {
                let mut s = shape.clone();
                s.extend(partition.iter().map(|&x| p.pow(x)));
                next.push(s);
            }
        }
        shapes = next;
    }
    shapes.iter().map(|s| AbelianGroup::new(s)).collect()
}

/// Outcome of checking one instance against both theory and search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Constructed(CertifiedLabelling),
    /// Predicted impossible and confirmed by exhausting `nodes` choices.
    Refuted { obstruction: Obstruction, nodes: u64 },
    /// No closed-form result applies; the search settled it.
    Searched { witness: Option<Labelling>, nodes: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error(transparent)]
    Label(#[from] LabelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("search budget exhausted after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("theory and search disagree: {0}")]
    Inconsistent(String),
}

pub fn certify_or_refute(
    g: &SimpleGraph,
    grp: &AbelianGroup,
    budget: u64,
) -> Result<Certificate, CertifyError> {
    match predict(g, grp)? {
        Prediction::Constructible => label_graph(g, grp)
            .map(Certificate::Constructed)
            .map_err(|e| CertifyError::Inconsistent(format!("predicted constructible but {e}"))),
        Prediction::Impossible(obstruction) => {
            let report = brute_force_exists(g, grp, budget)?;
            match report.verdict {
                OracleVerdict::NotExists => Ok(Certificate::Refuted {
                    obstruction,
                    nodes: report.nodes,
                }),
                OracleVerdict::Exists(lab) => Err(CertifyError::Inconsistent(format!(
                    "predicted impossible ({obstruction}) but search found {:?}",
                    lab.labels()
                ))),
                OracleVerdict::BudgetExceeded => Err(CertifyError::BudgetExceeded {
                    nodes: report.nodes,
                }),
            }
        }
        Prediction::Open => {
            let report = brute_force_exists(g, grp, budget)?;
            match report.verdict {
                OracleVerdict::Exists(lab) => Ok(Certificate::Searched {
                    witness: Some(lab),
                    nodes: report.nodes,
                }),
                OracleVerdict::NotExists => Ok(Certificate::Searched {
                    witness: None,
                    nodes: report.nodes,
                }),
                OracleVerdict::BudgetExceeded => Err(CertifyError::BudgetExceeded {
                    nodes: report.nodes,
                }),
            }
        }
    }
}
