//! Group irregularity strength and constructive irregular labellings.
//!
//! [`label_graph`] picks a spanning tree (avoiding stars where possible),
//! builds a [`LabelPlan`] for it by case analysis on the group, runs the plan
//! and certifies the result with [`crate::verifier::weighted_degrees`].
//! Edges outside the tree keep label 0.

mod star;
mod tree;

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::exact_power;
use crate::graph::{spanning_tree_prefer_nonstar, GraphError, Labelling, RootedTree, SimpleGraph};
use crate::group::{AbelianGroup, ElementClassification, GroupElement, GroupError};
use crate::path_collection::{shortest_path_collection, SpcError};
use crate::verifier::{weighted_degrees, DegreeReport};

pub use star::label_star;
pub use tree::label_tree;

/// Which branch of the closed form for `s_g` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrengthCase {
    /// `K_{1,n-1}` with `n + 1` an odd power of 3: `n + 2`.
    StarExceptional,
    /// `n ≡ 2 (mod 4)` otherwise: `n + 1`.
    NMod4Is2,
    Default,
}

impl fmt::Display for StrengthCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrengthCase::StarExceptional => "STAR_EXCEPTIONAL",
            StrengthCase::NMod4Is2 => "N_MOD4_2",
            StrengthCase::Default => "DEFAULT",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StrengthResult {
    pub value: u64,
    pub case: StrengthCase,
}

/// A proven reason why no irregular labelling exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Obstruction {
    /// Fewer group elements than vertices.
    TooFewElements { order: u64, n: usize },
    /// `|G| = n ≡ 2 (mod 4)`: the degree sum has a zero parity coordinate
    /// but the sum of all elements does not.
    ParityCollision { n: usize },
    /// `G` is a star and the group is `(Z_3)^q` with `3^q = n + 1`.
    TernaryStar { q: u32 },
    /// The group is `(Z_2)^q` with `2^q = n + 2`.
    BinaryElementary { q: u32 },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::TooFewElements { order, n } => {
                write!(f, "group order {order} is below the vertex count {n}")
            }
            Obstruction::ParityCollision { n } => {
                write!(f, "group order equals n = {n} with n ≡ 2 (mod 4)")
            }
            Obstruction::TernaryStar { q } => write!(
                f,
                "G ≅ K_{{1,n-1}} and the group is (Z3)^q with 3^q = n+1 (q = {q})"
            ),
            Obstruction::BinaryElementary { q } => {
                write!(f, "the group is (Z2)^q with 2^q = n+2 (q = {q})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("graph has {n} vertices, at least 3 are required")]
    TooSmall { n: usize },
    #[error("graph is not connected")]
    Disconnected,
    #[error("group order {order} is below the group irregularity strength {strength}")]
    OrderBelowStrength { order: u64, strength: u64 },
    #[error("group order {order} does not exceed the group irregularity strength {strength}")]
    OrderNotAboveStrength { order: u64, strength: u64 },
    #[error("no irregular labelling exists: {0}")]
    Impossible(Obstruction),
    #[error("tree is a star; use the star construction")]
    IsAStar,
    #[error("tree is not a star")]
    NotAStar,
    #[error("no construction applies to n = {n} over {group}")]
    NoConstruction { n: usize, group: String },
    #[error("construction {construction} produced equal degrees at vertices {witness:?}")]
    NotIrregular {
        construction: Construction,
        witness: (usize, usize),
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    PathCollection(#[from] SpcError),
}

/// Name of the case a labelling was built by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Construction {
    StarInversePairs,
    StarAllButThreeA,
    StarAllButZero,
    StarOrderAboveThree,
    StarInvolutionTriple,
    StarTernary,
    StarAllButInversePair,
    StarCyclicFour,
    StarInvolutionsFew,
    StarInvolutionsNPlusOne,
    StarInvolutionsMany,
    TreePairing,
    TreeCyclicFour,
    TreeInvolutionStar,
    TreeElementaryBinary,
    TreeOrderAboveThree,
    TreeInvolutionTriple,
    TreeTernaryGadget,
    TreeTernaryTable,
    TreeTernaryTriple,
    TreeInvolutionsFew,
    TreeInvolutionsNPlusOne,
    TreeInvolutionsMany,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Construction::StarInversePairs => "star-inverse-pairs",
            Construction::StarAllButThreeA => "star-all-but-3a",
            Construction::StarAllButZero => "star-all-but-zero",
            Construction::StarOrderAboveThree => "star-order-above-3",
            Construction::StarInvolutionTriple => "star-involution-triple",
            Construction::StarTernary => "star-ternary",
            Construction::StarAllButInversePair => "star-all-but-inverse-pair",
            Construction::StarCyclicFour => "star-cyclic-4",
            Construction::StarInvolutionsFew => "star-involutions-few",
            Construction::StarInvolutionsNPlusOne => "star-involutions-n-plus-1",
            Construction::StarInvolutionsMany => "star-involutions-many",
            Construction::TreePairing => "tree-pairing",
            Construction::TreeCyclicFour => "tree-cyclic-4",
            Construction::TreeInvolutionStar => "tree-involution-star",
            Construction::TreeElementaryBinary => "tree-elementary-binary",
            Construction::TreeOrderAboveThree => "tree-order-above-3",
            Construction::TreeInvolutionTriple => "tree-involution-triple",
            Construction::TreeTernaryGadget => "tree-ternary-gadget",
            Construction::TreeTernaryTable => "tree-ternary-table",
            Construction::TreeTernaryTriple => "tree-ternary-triple",
            Construction::TreeInvolutionsFew => "tree-involutions-few",
            Construction::TreeInvolutionsNPlusOne => "tree-involutions-n-plus-1",
            Construction::TreeInvolutionsMany => "tree-involutions-many",
        };
        f.write_str(name)
    }
}

/// A labelling step that fixes the degrees of specific vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Assignment {
    Phi {
        from: usize,
        to: usize,
        label: GroupElement,
    },
    StarEdge {
        edge: usize,
        leaf: usize,
        label: GroupElement,
    },
}

/// A monochromatic pair receiving degrees `label` and `-label`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAssignment {
    pub first: usize,
    pub second: usize,
    pub label: GroupElement,
    /// Tree path from `first` to `second`.
    pub path: Vec<usize>,
}

/// Everything needed to produce a labelling on a fixed tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelPlan<'t> {
    pub tree: &'t RootedTree,
    pub construction: Construction,
    pub special: Vec<Assignment>,
    /// Vertices whose degree the special assignments fix, in first-use order.
    pub special_vertices: Vec<usize>,
    pub pairs: Vec<PairAssignment>,
    /// Leftover vertex that keeps degree 0.
    pub zero_vertex: Option<usize>,
}

impl LabelPlan<'_> {
    /// True when each vertex is fixed by exactly one of: the special
    /// assignments, one pair, or the zero slot.
    pub fn covers_each_vertex_once(&self) -> bool {
        let n = self.tree.vertex_count();
        let mut hits = alloc::vec![0u32; n];
        for &v in &self.special_vertices {
            hits[v] += 1;
        }
        for p in &self.pairs {
            hits[p.first] += 1;
            hits[p.second] += 1;
        }
        if let Some(v) = self.zero_vertex {
            hits[v] += 1;
        }
        hits.iter().all(|&h| h == 1)
    }

    pub fn execute(&self, g: &SimpleGraph, grp: &AbelianGroup) -> Result<Labelling, LabelError> {
        debug_assert!(self.covers_each_vertex_once());
        let mut lab = Labelling::zero(g, grp);
        for step in &self.special {
            match step {
                Assignment::Phi { from, to, label } => {
                    let path = self.tree.path(*from, *to)?;
                    lab.apply_phi_along(grp, self.tree, &path, label);
                }
                Assignment::StarEdge { edge, label, .. } => lab.set(*edge, label.clone()),
            }
        }
        for p in &self.pairs {
            lab.apply_phi_along(grp, self.tree, &p.path, &p.label);
        }
        Ok(lab)
    }
}

/// A labelling together with its verifier report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedLabelling {
    pub labelling: Labelling,
    pub report: DegreeReport,
    pub construction: Construction,
}

fn check_graph(g: &SimpleGraph) -> Result<(), LabelError> {
    if g.vertex_count() < 3 {
        return Err(LabelError::TooSmall {
            n: g.vertex_count(),
        });
    }
    if !g.is_connected() {
        return Err(LabelError::Disconnected);
    }
    Ok(())
}

fn strength_of(n: usize, is_star: bool) -> StrengthResult {
    let n64 = n as u64;
    if n % 4 == 2 {
        // n + 1 = 3^e is only ≡ 3 (mod 4) for odd e
        if is_star && exact_power(n64 + 1, 3).is_some() {
            StrengthResult {
                value: n64 + 2,
                case: StrengthCase::StarExceptional,
            }
        } else {
            StrengthResult {
                value: n64 + 1,
                case: StrengthCase::NMod4Is2,
            }
        }
    } else {
        StrengthResult {
            value: n64,
            case: StrengthCase::Default,
        }
    }
}

pub fn group_irregularity_strength(g: &SimpleGraph) -> Result<StrengthResult, LabelError> {
    check_graph(g)?;
    Ok(strength_of(g.vertex_count(), g.is_star()))
}

/// The two exceptional families, tested without any order precondition.
fn exception_for(n: usize, is_star: bool, grp: &AbelianGroup) -> Option<Obstruction> {
    let order = grp.order();
    if is_star && grp.is_elementary(3) && order == n as u64 + 1 {
        return exact_power(order, 3).map(|q| Obstruction::TernaryStar { q });
    }
    if grp.is_elementary(2) && order == n as u64 + 2 {
        return exact_power(order, 2).map(|q| Obstruction::BinaryElementary { q });
    }
    None
}

/// Whether `(g, grp)` is one of the two exceptional families. Only defined
/// for groups of order above `s_g(g)`.
pub fn is_exceptional_group(g: &SimpleGraph, grp: &AbelianGroup) -> Result<bool, LabelError> {
    let s = group_irregularity_strength(g)?;
    if grp.order() <= s.value {
        return Err(LabelError::OrderNotAboveStrength {
            order: grp.order(),
            strength: s.value,
        });
    }
    Ok(exception_for(g.vertex_count(), g.is_star(), grp).is_some())
}

/// What the closed-form results say about a `(graph, group)` instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prediction {
    Constructible,
    Impossible(Obstruction),
    /// Order between `n` and `s_g` that no result settles, e.g. `Z_27` on
    /// `K_{1,25}`.
    Open,
}

pub fn predict(g: &SimpleGraph, grp: &AbelianGroup) -> Result<Prediction, LabelError> {
    let s = group_irregularity_strength(g)?;
    let n = g.vertex_count();
    let order = grp.order();
    if order < n as u64 {
        return Ok(Prediction::Impossible(Obstruction::TooFewElements { order, n }));
    }
    if order == n as u64 && n % 4 == 2 {
        return Ok(Prediction::Impossible(Obstruction::ParityCollision { n }));
    }
    if let Some(ob) = exception_for(n, g.is_star(), grp) {
        return Ok(Prediction::Impossible(ob));
    }
    if order >= s.value {
        Ok(Prediction::Constructible)
    } else {
        Ok(Prediction::Open)
    }
}

/// Builds and certifies a `grp`-irregular labelling of a connected graph.
pub fn label_graph(g: &SimpleGraph, grp: &AbelianGroup) -> Result<CertifiedLabelling, LabelError> {
    check_graph(g)?;
    let tree = spanning_tree_prefer_nonstar(g)?;
    if tree.is_star() {
        label_star(g, &tree, grp)
    } else {
        label_tree(g, &tree, grp)
    }
}

/// Shared entry checks for the star and tree labellers; returns `s_g`.
fn admit(
    g: &SimpleGraph,
    tree: &RootedTree,
    grp: &AbelianGroup,
) -> Result<StrengthResult, LabelError> {
    check_graph(g)?;
    let n = g.vertex_count();
    if tree.vertex_count() != n {
        return Err(GraphError::NotATree.into());
    }
    let s = strength_of(n, tree.is_star());
    if grp.order() < s.value {
        return Err(LabelError::OrderBelowStrength {
            order: grp.order(),
            strength: s.value,
        });
    }
    if let Some(ob) = exception_for(n, tree.is_star(), grp) {
        return Err(LabelError::Impossible(ob));
    }
    Ok(s)
}

fn certify(
    g: &SimpleGraph,
    grp: &AbelianGroup,
    plan: &LabelPlan<'_>,
) -> Result<CertifiedLabelling, LabelError> {
    let labelling = plan.execute(g, grp)?;
    let report = weighted_degrees(g, &labelling, grp).map_err(|e| match e {
        crate::Error::Group(e) => LabelError::Group(e),
        crate::Error::Graph(e) => LabelError::Graph(e),
        other => unreachable!("degree computation cannot fail with {other}"),
    })?;
    if let Some(witness) = report.collision_witness {
        return Err(LabelError::NotIrregular {
            construction: plan.construction,
            witness,
        });
    }
    Ok(CertifiedLabelling {
        labelling,
        report,
        construction: plan.construction,
    })
}

/// Element lookups shared by the constructions; all choices are the
/// lexicographically smallest qualifying element.
pub(crate) struct Palette<'g> {
    pub grp: &'g AbelianGroup,
    pub cls: ElementClassification,
}

impl<'g> Palette<'g> {
    pub fn new(grp: &'g AbelianGroup) -> Self {
        Self {
            grp,
            cls: grp.classify(),
        }
    }

    pub fn order(&self) -> u64 {
        self.grp.order()
    }

    pub fn involutions(&self) -> &[GroupElement] {
        &self.cls.involutions
    }

    pub fn smallest(&self, pred: impl Fn(&GroupElement) -> bool) -> Option<GroupElement> {
        self.grp.elements().find(|x| pred(x))
    }

    pub fn smallest_of_order_above(&self, bound: u64) -> Option<GroupElement> {
        self.smallest(|x| self.grp.element_order(x) > bound)
    }

    /// Representatives `a_j` of the first `count` inverse pairs `{a_j, -a_j}`
    /// disjoint from `forbidden`.
    pub fn pair_reps_avoiding(
        &self,
        forbidden: &BTreeSet<GroupElement>,
        count: usize,
    ) -> Option<Vec<GroupElement>> {
        let reps: Vec<GroupElement> = self
            .cls
            .inverse_pairs
            .iter()
            .filter(|(a, b)| !forbidden.contains(a) && !forbidden.contains(b))
            .take(count)
            .map(|(a, _)| a.clone())
            .collect();
        (reps.len() == count).then_some(reps)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.grp.plus(x, y)
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        self.grp.negate(x)
    }

    pub fn times(&self, n: i64, x: &GroupElement) -> GroupElement {
        self.grp.times(n, x)
    }
}

/// Monochromatic pairing of every vertex not yet fixed, run through the
/// path collection solver per color class.
pub(crate) fn pair_remaining(
    tree: &RootedTree,
    pal: &Palette<'_>,
    taken: &[bool],
    forbidden: &BTreeSet<GroupElement>,
) -> Option<(Vec<PairAssignment>, Option<usize>)> {
    let mut classes: [Vec<usize>; 2] = [Vec::new(), Vec::new()];
    for v in 0..tree.vertex_count() {
        if !taken[v] {
            classes[usize::from(tree.color(v) - 1)].push(v);
        }
    }
    let odd: Vec<usize> = (0..2).filter(|&c| classes[c].len() % 2 == 1).collect();
    let zero_vertex = match odd.as_slice() {
        [] => None,
        [c] => {
            if forbidden.contains(&pal.grp.zero()) {
                return None;
            }
            Some(classes[*c].remove(0))
        }
        _ => return None,
    };
    let needed = (classes[0].len() + classes[1].len()) / 2;
    let mut reps = pal.pair_reps_avoiding(forbidden, needed)?.into_iter();
    let mut pairs = Vec::with_capacity(needed);
    for class in &classes {
        if class.is_empty() {
            continue;
        }
        let collection = shortest_path_collection(tree, class).ok()?;
        for (&(first, second), path) in collection.pairs.iter().zip(collection.paths) {
            pairs.push(PairAssignment {
                first,
                second,
                label: reps.next()?,
                path,
            });
        }
    }
    Some((pairs, zero_vertex))
}
