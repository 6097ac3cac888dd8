//! Labellings of star trees `K_{1,n-1}`: every leaf degree is its edge label
//! and the center receives the sum of all labels.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{admit, certify, Assignment, CertifiedLabelling, Construction, LabelError, LabelPlan, Palette};
use crate::graph::{RootedTree, SimpleGraph};
use crate::group::{AbelianGroup, GroupElement};

struct StarCtx<'p, 'g> {
    n: usize,
    k: u64,
    pal: &'p Palette<'g>,
}

type Strategy = fn(&StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)>;

const AT_STRENGTH: &[Strategy] = &[
    inverse_pairs,
    all_but_three_a,
    all_but_zero,
    order_above_three,
    all_but_inverse_pair,
    cyclic_four,
];

const ABOVE_STRENGTH: &[Strategy] = &[
    inverse_pairs,
    order_above_three,
    involution_triple,
    ternary,
    all_but_inverse_pair,
    cyclic_four,
    involutions_few,
    involutions_n_plus_one,
    involutions_many,
];

/// Labels a graph whose chosen spanning tree is a star.
pub fn label_star(
    g: &SimpleGraph,
    tree: &RootedTree,
    grp: &AbelianGroup,
) -> Result<CertifiedLabelling, LabelError> {
    if !tree.is_star() {
        return Err(LabelError::NotAStar);
    }
    let s = admit(g, tree, grp)?;
    let pal = Palette::new(grp);
    let plan = plan(g, tree, &pal, grp.order() == s.value).ok_or_else(|| {
        LabelError::NoConstruction {
            n: g.vertex_count(),
            group: grp.to_string(),
        }
    })?;
    certify(g, grp, &plan)
}

pub(super) fn plan<'t>(
    g: &SimpleGraph,
    tree: &'t RootedTree,
    pal: &Palette<'_>,
    at_strength: bool,
) -> Option<LabelPlan<'t>> {
    let n = tree.vertex_count();
    let ctx = StarCtx {
        n,
        k: pal.order(),
        pal,
    };
    let strategies = if at_strength { AT_STRENGTH } else { &[] }
        .iter()
        .chain(ABOVE_STRENGTH);
    let (construction, labels) = strategies.into_iter().find_map(|f| f(&ctx))?;
    debug_assert_eq!(labels.len(), n - 1);
    let center = (0..n).find(|&v| tree.tree_degree(v) == n - 1)?;
    let leaves = (0..n).filter(|&v| v != center);
    let mut special = Vec::with_capacity(n - 1);
    let mut special_vertices = alloc::vec![center];
    for (leaf, label) in leaves.zip(labels) {
        special.push(Assignment::StarEdge {
            edge: g.edge_id(center, leaf)?,
            leaf,
            label,
        });
        special_vertices.push(leaf);
    }
    Some(LabelPlan {
        tree,
        construction,
        special,
        special_vertices,
        pairs: Vec::new(),
        zero_vertex: None,
    })
}

/// `a_j, -a_j` for the first `count` inverse pairs avoiding `forbidden`.
fn paired(
    ctx: &StarCtx<'_, '_>,
    forbidden: &BTreeSet<GroupElement>,
    count: usize,
) -> Option<Vec<GroupElement>> {
    let reps = ctx.pal.pair_reps_avoiding(forbidden, count)?;
    Some(
        reps.into_iter()
            .flat_map(|a| {
                let b = ctx.pal.neg(&a);
                [a, b]
            })
            .collect(),
    )
}

fn inverse_pairs(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    if ctx.n.is_multiple_of(2) {
        return None;
    }
    let labels = paired(ctx, &BTreeSet::new(), (ctx.n - 1) / 2)?;
    Some((Construction::StarInversePairs, labels))
}

// |G| = n with a single involution 2a: leaves take G \ {3a}, the center
// receives 2a - 3a = 3a.
fn all_but_three_a(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    if ctx.k != ctx.n as u64 || ctx.pal.involutions().len() != 1 {
        return None;
    }
    let a = ctx.pal.smallest(|x| ctx.pal.grp.element_order(x) == 4)?;
    let skip = ctx.pal.times(3, &a);
    let labels = ctx.pal.grp.elements().filter(|x| *x != skip).collect();
    Some((Construction::StarAllButThreeA, labels))
}

fn all_but_zero(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    if ctx.k != ctx.n as u64 || ctx.pal.involutions().len() < 2 {
        return None;
    }
    let labels = ctx.pal.grp.elements().filter(|x| !x.is_zero()).collect();
    Some((Construction::StarAllButZero, labels))
}

// a, -2a, 0 plus pairs; center -a
fn order_above_three(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    if ctx.n % 2 == 1 || ctx.n < 4 {
        return None;
    }
    let pal = ctx.pal;
    let a = pal.smallest_of_order_above(3)?;
    let two_a = pal.times(2, &a);
    let minus_two_a = pal.neg(&two_a);
    let forbidden: BTreeSet<_> = [pal.grp.zero(), a.clone(), pal.neg(&a), two_a, minus_two_a.clone()]
        .into_iter()
        .collect();
    let mut labels = alloc::vec![a, minus_two_a, pal.grp.zero()];
    labels.extend(paired(ctx, &forbidden, (ctx.n - 4) / 2)?);
    Some((Construction::StarOrderAboveThree, labels))
}

// a, i, 0 plus pairs; center a + i
fn involution_triple(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    let pal = ctx.pal;
    if ctx.n % 2 == 1 || ctx.n < 4 || pal.grp.exponent() > 3 {
        return None;
    }
    let i = pal.involutions().first()?.clone();
    let a = pal.smallest(|x| !x.is_zero() && *x != i)?;
    let minus_a = pal.neg(&a);
    let forbidden: BTreeSet<_> = [
        pal.grp.zero(),
        a.clone(),
        minus_a.clone(),
        i.clone(),
        pal.add(&a, &i),
        pal.add(&minus_a, &i),
    ]
    .into_iter()
    .collect();
    let mut labels = alloc::vec![a, i, pal.grp.zero()];
    labels.extend(paired(ctx, &forbidden, (ctx.n - 4) / 2)?);
    Some((Construction::StarInvolutionTriple, labels))
}

// a, b, 2a + 2b plus pairs in an exponent-3 group; center 0
fn ternary(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    let pal = ctx.pal;
    if ctx.n % 2 == 1 || ctx.n < 4 || pal.grp.exponent() != 3 || ctx.k < ctx.n as u64 + 3 {
        return None;
    }
    let a = pal.smallest(|x| !x.is_zero())?;
    let two_a = pal.times(2, &a);
    let b = pal.smallest(|x| !x.is_zero() && *x != a && *x != two_a)?;
    let two_b = pal.times(2, &b);
    let a_b = pal.add(&a, &b);
    let c = pal.times(2, &a_b);
    let forbidden: BTreeSet<_> = [
        pal.grp.zero(),
        a.clone(),
        two_a,
        b.clone(),
        two_b,
        a_b,
        c.clone(),
    ]
    .into_iter()
    .collect();
    let mut labels = alloc::vec![a, b, c];
    labels.extend(paired(ctx, &forbidden, (ctx.n - 4) / 2)?);
    Some((Construction::StarTernary, labels))
}

// |G| = n + 2 with zero element sum: drop 0 and one inverse pair
fn all_but_inverse_pair(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    let pal = ctx.pal;
    if ctx.k != ctx.n as u64 + 2 || pal.involutions().len() == 1 {
        return None;
    }
    let (a1, a2) = pal.cls.inverse_pairs.first()?.clone();
    let labels = pal
        .grp
        .elements()
        .filter(|x| !x.is_zero() && *x != a1 && *x != a2)
        .collect();
    Some((Construction::StarAllButInversePair, labels))
}

// |G| = n + 2 with one involution: 0, a, 2a plus pairs outside <a>; center 3a
fn cyclic_four(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    let pal = ctx.pal;
    if ctx.k != ctx.n as u64 + 2 || pal.involutions().len() != 1 || ctx.n < 4 {
        return None;
    }
    let a = pal.smallest(|x| pal.grp.element_order(x) == 4)?;
    let two_a = pal.times(2, &a);
    let forbidden: BTreeSet<_> = [pal.grp.zero(), a.clone(), two_a.clone(), pal.times(3, &a)]
        .into_iter()
        .collect();
    let mut labels = alloc::vec![pal.grp.zero(), a, two_a];
    labels.extend(paired(ctx, &forbidden, (ctx.n - 4) / 2)?);
    Some((Construction::StarCyclicFour, labels))
}

// t = 2^p - 1 <= n involutions, p >= 2 so they sum to 0
fn involutions_few(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    let inv = ctx.pal.involutions();
    let t = inv.len();
    if t < 3 || t > ctx.n {
        return None;
    }
    // n even: all t on leaves, center 0; n odd: center takes the last one
    let on_leaves = if ctx.n.is_multiple_of(2) { t } else { t - 1 };
    let mut labels: Vec<GroupElement> = inv[..on_leaves].to_vec();
    labels.extend(paired(ctx, &BTreeSet::new(), (ctx.n - 1 - on_leaves) / 2)?);
    Some((Construction::StarInvolutionsFew, labels))
}

fn involutions_n_plus_one(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    let pal = ctx.pal;
    if pal.involutions().len() != ctx.n + 1 || ctx.n < 4 {
        return None;
    }
    let (a, minus_a) = pal.cls.inverse_pairs.first()?.clone();
    let subset = pal.grp.zero_sum_involution_subset(ctx.n as u64 - 2).ok()?;
    let mut labels = alloc::vec![a, minus_a];
    labels.extend(subset.into_iter().take(ctx.n - 3));
    Some((Construction::StarInvolutionsNPlusOne, labels))
}

fn involutions_many(ctx: &StarCtx<'_, '_>) -> Option<(Construction, Vec<GroupElement>)> {
    let pal = ctx.pal;
    if pal.involutions().len() < ctx.n + 2 {
        return None;
    }
    let subset = pal.grp.zero_sum_involution_subset(ctx.n as u64).ok()?;
    let labels = subset.into_iter().take(ctx.n - 1).collect();
    Some((Construction::StarInvolutionsMany, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::labeller::label_graph;

    fn star_labels(n: usize, factors: &[u64]) -> (Construction, Vec<GroupElement>) {
        let g = families::star(n);
        let grp = AbelianGroup::new(factors).unwrap();
        let c = label_graph(&g, &grp).unwrap();
        (c.construction, c.labelling.labels().to_vec())
    }

    #[test]
    fn star_on_five_vertices_uses_inverse_pairs() {
        let (construction, labels) = star_labels(5, &[5]);
        assert_eq!(construction, Construction::StarInversePairs);
        let grp = AbelianGroup::cyclic(5).unwrap();
        let set: BTreeSet<_> = labels.into_iter().collect();
        assert_eq!(set.len(), 4);
        assert!(!set.contains(&grp.zero()));
    }

    #[test]
    fn cyclic_star_at_strength_skips_three_a() {
        let (construction, labels) = star_labels(4, &[4]);
        assert_eq!(construction, Construction::StarAllButThreeA);
        let grp = AbelianGroup::cyclic(4).unwrap();
        assert!(!labels.contains(&grp.element(&[3]).unwrap()));
    }

    #[test]
    fn exceptional_star_at_strength() {
        // K_{1,25}: s_g = 28
        for factors in [&[28u64][..], &[2, 14]] {
            let grp = AbelianGroup::new(factors).unwrap();
            assert!(label_graph(&families::star(26), &grp).is_ok(), "{grp}");
        }
    }

    #[test]
    fn involution_heavy_stars() {
        assert_eq!(star_labels(4, &[2, 2, 2]).0, Construction::StarInvolutionTriple);
        assert_eq!(star_labels(5, &[2, 2, 2]).0, Construction::StarInvolutionsMany);
        assert_eq!(star_labels(11, &[2, 2, 3]).0, Construction::StarInvolutionsFew);
        assert_eq!(star_labels(8, &[2, 2, 4]).0, Construction::StarOrderAboveThree);
        assert_eq!(star_labels(6, &[2, 2, 2, 2]).0, Construction::StarInvolutionsMany);
        assert_eq!(
            star_labels(14, &[2, 2, 2, 2, 3]).0,
            Construction::StarOrderAboveThree
        );
    }
}
