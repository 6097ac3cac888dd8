//! Labellings of non-star trees. Each strategy fixes a handful of vertex
//! degrees with `φ` and leaves the rest to monochromatic pairing.

use alloc::collections::BTreeSet;
use alloc::string::ToString;
use alloc::vec::Vec;

use super::{
    admit, certify, pair_remaining, Assignment, CertifiedLabelling, Construction, LabelError,
    LabelPlan, Palette,
};
use crate::graph::{RootedTree, SimpleGraph};
use crate::group::{AbelianGroup, GroupElement};

struct TreeCtx<'t, 'p, 'g> {
    tree: &'t RootedTree,
    pal: &'p Palette<'g>,
    n: usize,
    k: u64,
    /// Color classes 1 and 2, ascending.
    classes: [Vec<usize>; 2],
}

impl TreeCtx<'_, '_, '_> {
    fn both_odd(&self) -> bool {
        self.classes[0].len() % 2 == 1 && self.classes[1].len() % 2 == 1
    }

    /// `(larger, smaller)` class indices; ties go to class 1.
    fn by_size(&self) -> (usize, usize) {
        if self.classes[0].len() >= self.classes[1].len() {
            (0, 1)
        } else {
            (1, 0)
        }
    }
}

struct Builder<'p, 'g> {
    pal: &'p Palette<'g>,
    taken: Vec<bool>,
    special: Vec<Assignment>,
    special_vertices: Vec<usize>,
    degrees: BTreeSet<GroupElement>,
}

impl<'p, 'g> Builder<'p, 'g> {
    fn new(ctx: &TreeCtx<'_, 'p, 'g>) -> Self {
        Self {
            pal: ctx.pal,
            taken: alloc::vec![false; ctx.n],
            special: Vec::new(),
            special_vertices: Vec::new(),
            degrees: BTreeSet::new(),
        }
    }

    fn fix(&mut self, v: usize) {
        if !core::mem::replace(&mut self.taken[v], true) {
            self.special_vertices.push(v);
        }
    }

    fn phi(&mut self, from: usize, to: usize, label: GroupElement) {
        self.fix(from);
        self.fix(to);
        self.special.push(Assignment::Phi { from, to, label });
    }

    /// Records the final degrees of the fixed vertices.
    fn degrees(&mut self, values: impl IntoIterator<Item = GroupElement>) {
        self.degrees.extend(values);
    }

    fn finish<'t>(self, ctx: &TreeCtx<'t, '_, '_>, construction: Construction) -> Option<LabelPlan<'t>> {
        let (pairs, zero_vertex) = pair_remaining(ctx.tree, self.pal, &self.taken, &self.degrees)?;
        Some(LabelPlan {
            tree: ctx.tree,
            construction,
            special: self.special,
            special_vertices: self.special_vertices,
            pairs,
            zero_vertex,
        })
    }
}

type Strategy = for<'t, 'p, 'g> fn(&TreeCtx<'t, 'p, 'g>) -> Option<LabelPlan<'t>>;

const AT_STRENGTH: &[Strategy] = &[
    pairing,
    cyclic_four,
    involution_star,
    elementary_binary,
    order_above_three,
    ternary_gadget,
    ternary_triple,
];

const ABOVE_STRENGTH: &[Strategy] = &[
    pairing,
    order_above_three,
    involution_triple,
    ternary_gadget,
    ternary_table,
    ternary_triple,
    involutions_few,
    involutions_n_plus_one,
    involutions_many,
];

/// Labels a graph through a spanning tree that is not a star.
pub fn label_tree(
    g: &SimpleGraph,
    tree: &RootedTree,
    grp: &AbelianGroup,
) -> Result<CertifiedLabelling, LabelError> {
    if tree.is_star() {
        return Err(LabelError::IsAStar);
    }
    let s = admit(g, tree, grp)?;
    let pal = Palette::new(grp);
    let plan = plan(tree, &pal, grp.order() == s.value).ok_or_else(|| {
        LabelError::NoConstruction {
            n: g.vertex_count(),
            group: grp.to_string(),
        }
    })?;
    certify(g, grp, &plan)
}

pub(super) fn plan<'t>(
    tree: &'t RootedTree,
    pal: &Palette<'_>,
    at_strength: bool,
) -> Option<LabelPlan<'t>> {
    let ctx = TreeCtx {
        tree,
        pal,
        n: tree.vertex_count(),
        k: pal.order(),
        classes: [tree.color_class(1), tree.color_class(2)],
    };
    let first: &[Strategy] = if at_strength { AT_STRENGTH } else { &[] };
    first.iter().chain(ABOVE_STRENGTH).find_map(|f| f(&ctx))
}

fn pairing<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    if ctx.both_odd() {
        return None;
    }
    Builder::new(ctx).finish(ctx, Construction::TreePairing)
}

// |G| = n ≡ 0 (mod 4), one involution: degrees a, 2a, 3a seed the pairing
// and the leftover vertex takes 0.
fn cyclic_four<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let pal = ctx.pal;
    if ctx.k != ctx.n as u64 || pal.involutions().len() != 1 {
        return None;
    }
    let a = pal.smallest(|x| pal.grp.element_order(x) == 4)?;
    let (two, one) = if ctx.classes[0].len() >= 2 { (0, 1) } else { (1, 0) };
    let (x1, x2) = (*ctx.classes[two].first()?, *ctx.classes[two].get(1)?);
    let x0 = *ctx.classes[one].first()?;
    let mut b = Builder::new(ctx);
    let two_a = pal.times(2, &a);
    b.phi(x0, x1, a.clone());
    b.phi(x0, x2, two_a.clone());
    b.degrees([pal.times(3, &a), a, two_a]);
    b.finish(ctx, Construction::TreeCyclicFour)
}

// |G| = n ≡ 0 (mod 4) with r <= n/2 involutions: x0 sends every involution
// across to the other class, then repairs parity with a non-involution.
fn involution_star<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let pal = ctx.pal;
    let inv = pal.involutions();
    let r = inv.len();
    if ctx.k != ctx.n as u64 || r < 3 || 2 * r > ctx.n {
        return None;
    }
    let small = if ctx.classes[0].len() <= ctx.classes[1].len() { 0 } else { 1 };
    let other = &ctx.classes[1 - small];
    let x0 = *ctx.classes[small].first()?;
    if other.len() < r {
        return None;
    }
    let mut b = Builder::new(ctx);
    for (&x, i) in other.iter().zip(inv) {
        b.phi(x0, x, i.clone());
    }
    b.degrees(inv.iter().cloned());
    let left_small = ctx.classes[small].len() - 1;
    let left_other = other.len() - r;
    if left_small % 2 == 1 && left_other % 2 == 1 {
        let x_next = *ctx.classes[small].get(1)?;
        let a = pal.smallest(|x| !x.is_zero() && !pal.grp.is_involution(x))?;
        let minus_a = pal.neg(&a);
        b.phi(x0, x_next, a.clone());
        b.degrees([a, minus_a]);
    } else {
        b.degrees([pal.grp.zero()]);
    }
    b.finish(ctx, Construction::TreeInvolutionStar)
}

// |G| = n and G = (Z_2)^q: vertex 0 sends a distinct involution to every
// other vertex and keeps their sum 0.
fn elementary_binary<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let pal = ctx.pal;
    if ctx.k != ctx.n as u64 || !pal.grp.is_elementary(2) || ctx.n < 4 {
        return None;
    }
    let mut b = Builder::new(ctx);
    for (v, i) in (1..ctx.n).zip(pal.involutions()) {
        b.phi(0, v, i.clone());
    }
    b.degrees(pal.grp.elements());
    b.finish(ctx, Construction::TreeElementaryBinary)
}

// both classes odd: degrees a, -2a, 0 in the larger class and -a opposite
fn order_above_three<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    if !ctx.both_odd() {
        return None;
    }
    let pal = ctx.pal;
    let a = pal.smallest_of_order_above(3)?;
    let (large, small) = ctx.by_size();
    let xs = ctx.classes[large].get(..3)?;
    let x0 = *ctx.classes[small].first()?;
    let minus_two_a = pal.neg(&pal.times(2, &a));
    let mut b = Builder::new(ctx);
    b.phi(xs[0], x0, a.clone());
    b.phi(xs[1], x0, minus_two_a.clone());
    b.fix(xs[2]);
    b.degrees([pal.neg(&a), a, minus_two_a, pal.grp.zero()]);
    b.finish(ctx, Construction::TreeOrderAboveThree)
}

// both classes odd: degrees i, a, 0 in the larger class and a + i opposite
fn involution_triple<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    if !ctx.both_odd() {
        return None;
    }
    let pal = ctx.pal;
    let i = pal.involutions().first()?.clone();
    let a = pal.smallest(|x| !x.is_zero() && *x != i)?;
    let (large, small) = ctx.by_size();
    let xs = ctx.classes[large].get(..3)?;
    let x0 = *ctx.classes[small].first()?;
    let mut b = Builder::new(ctx);
    b.phi(xs[0], x0, i.clone());
    b.phi(xs[1], x0, a.clone());
    b.fix(xs[2]);
    b.degrees([pal.add(&a, &i), i, a, pal.grp.zero()]);
    b.finish(ctx, Construction::TreeInvolutionTriple)
}

/// `a, b, c` with `b ∉ <a>` and `c ∉ <a, b>`, each lexicographically first.
fn ternary_basis(pal: &Palette<'_>, count: usize) -> Option<Vec<GroupElement>> {
    let mut basis: Vec<GroupElement> = Vec::with_capacity(count);
    let mut span = alloc::vec![pal.grp.zero()];
    while basis.len() < count {
        let next = pal.smallest(|x| !span.contains(x))?;
        let shifted: Vec<GroupElement> = span
            .iter()
            .flat_map(|s| [pal.add(s, &next), pal.add(s, &pal.times(2, &next))])
            .collect();
        span.extend(shifted);
        basis.push(next);
    }
    Some(basis)
}

/// Runs the 8-vertex exponent-3 layout: five vertices `xs` in one class,
/// three `ys` in the other, `φ(x, y)` values in the fixed incidence order.
fn eight_vertex_layout<'t>(
    ctx: &TreeCtx<'t, '_, '_>,
    values: [GroupElement; 7],
    degrees: [GroupElement; 8],
    construction: Construction,
) -> Option<LabelPlan<'t>> {
    let (large, small) = ctx.by_size();
    let xs = ctx.classes[large].get(..5)?;
    let ys = ctx.classes[small].get(..3)?;
    let incidence = [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (3, 2), (4, 2)];
    let mut b = Builder::new(ctx);
    for ((xi, yi), value) in incidence.into_iter().zip(values) {
        b.phi(xs[xi], ys[yi], value);
    }
    b.degrees(degrees);
    b.finish(ctx, construction)
}

fn ternary_gadget<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let pal = ctx.pal;
    if !ctx.both_odd() || pal.grp.exponent() != 3 {
        return None;
    }
    let basis = ternary_basis(pal, 3)?;
    let (a, b, c) = (&basis[0], &basis[1], &basis[2]);
    let ab = pal.add(a, b);
    let abc = pal.add(&ab, c);
    let values = [
        a.clone(),
        a.clone(),
        pal.add(&pal.times(2, a), b),
        ab.clone(),
        pal.add(&pal.times(2, &ab), c),
        abc.clone(),
        pal.grp.zero(),
    ];
    let degrees = [
        a.clone(),
        b.clone(),
        c.clone(),
        abc,
        pal.grp.zero(),
        pal.neg(a),
        pal.neg(b),
        pal.neg(c),
    ];
    eight_vertex_layout(ctx, values, degrees, Construction::TreeTernaryGadget)
}

// n = 8 over Z_3 x Z_3, where no third independent element exists
fn ternary_table<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let grp = ctx.pal.grp;
    if ctx.n != 8 || grp.factor_orders() != [3, 3] || !ctx.both_odd() {
        return None;
    }
    let e = |x: u64, y: u64| grp.element(&[x, y]).ok();
    let values = [e(1, 0)?, e(2, 0)?, e(0, 0)?, e(1, 1)?, e(2, 1)?, e(2, 1)?, e(2, 2)?];
    let degrees = [
        e(1, 0)?,
        e(2, 0)?,
        e(0, 2)?,
        e(2, 1)?,
        e(2, 2)?,
        e(0, 0)?,
        e(1, 1)?,
        e(0, 1)?,
    ];
    eight_vertex_layout(ctx, values, degrees, Construction::TreeTernaryTable)
}

// Exponent 3, both classes odd, too small for the gadget: degrees a, b, 0
// in the larger class and a + b opposite.
fn ternary_triple<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let pal = ctx.pal;
    if !ctx.both_odd() || pal.grp.exponent() != 3 {
        return None;
    }
    let basis = ternary_basis(pal, 2)?;
    let (large, small) = ctx.by_size();
    let xs = ctx.classes[large].get(..3)?;
    let x0 = *ctx.classes[small].first()?;
    let mut b = Builder::new(ctx);
    b.phi(xs[0], x0, basis[0].clone());
    b.phi(xs[1], x0, basis[1].clone());
    b.fix(xs[2]);
    b.degrees([
        pal.add(&basis[0], &basis[1]),
        basis[0].clone(),
        basis[1].clone(),
        pal.grp.zero(),
    ]);
    b.finish(ctx, Construction::TreeTernaryTriple)
}

// 3 <= t <= n involutions: one vertex sends t - 1 of them to others and
// keeps the last; the vertex split keeps the leftover count pairable.
fn involutions_few<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let inv = ctx.pal.involutions();
    let t = inv.len();
    if t < 3 || t > ctx.n {
        return None;
    }
    let (c1, c2) = (ctx.classes[0].len(), ctx.classes[1].len());
    let from_first = (t.saturating_sub(c2)..=t.min(c1))
        .rev()
        .find(|&s| (ctx.n - t) % 2 == 1 || (c1 - s) % 2 == 0)?;
    let mut chosen: Vec<usize> = ctx.classes[0][..from_first]
        .iter()
        .chain(&ctx.classes[1][..t - from_first])
        .copied()
        .collect();
    chosen.sort_unstable();
    let mut b = Builder::new(ctx);
    for (&x, i) in chosen[1..].iter().zip(&inv[1..]) {
        b.phi(chosen[0], x, i.clone());
    }
    b.degrees(inv.iter().cloned());
    b.finish(ctx, Construction::TreeInvolutionsFew)
}

fn star_out_subset(b: &mut Builder<'_, '_>, vertices: &[usize], subset: &[GroupElement]) {
    for (&x, value) in vertices[1..].iter().zip(&subset[1..]) {
        b.phi(vertices[0], x, value.clone());
    }
    for &x in vertices {
        b.fix(x);
    }
    b.degrees(subset.iter().cloned());
}

// t = n + 1: one monochromatic pair takes a, -a; the rest star out a
// zero-sum involution set of size n - 2
fn involutions_n_plus_one<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let pal = ctx.pal;
    if pal.involutions().len() != ctx.n + 1 || ctx.n < 6 {
        return None;
    }
    let (a, minus_a) = pal.cls.inverse_pairs.first()?.clone();
    let class = if ctx.classes[0].len() >= 2 { 0 } else { 1 };
    let (y1, y2) = (ctx.classes[class][0], ctx.classes[class][1]);
    let subset = pal.grp.zero_sum_involution_subset(ctx.n as u64 - 2).ok()?;
    let rest: Vec<usize> = (0..ctx.n).filter(|&v| v != y1 && v != y2).collect();
    let mut b = Builder::new(ctx);
    b.phi(y1, y2, a.clone());
    b.degrees([a, minus_a]);
    star_out_subset(&mut b, &rest, &subset);
    b.finish(ctx, Construction::TreeInvolutionsNPlusOne)
}

fn involutions_many<'t>(ctx: &TreeCtx<'t, '_, '_>) -> Option<LabelPlan<'t>> {
    let pal = ctx.pal;
    if pal.involutions().len() < ctx.n + 2 {
        return None;
    }
    let subset = pal.grp.zero_sum_involution_subset(ctx.n as u64).ok()?;
    let all: Vec<usize> = (0..ctx.n).collect();
    let mut b = Builder::new(ctx);
    star_out_subset(&mut b, &all, &subset);
    b.finish(ctx, Construction::TreeInvolutionsMany)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::spanning_tree_prefer_nonstar;

    fn construct(g: &SimpleGraph, factors: &[u64]) -> Result<CertifiedLabelling, LabelError> {
        let grp = AbelianGroup::new(factors).unwrap();
        let tree = spanning_tree_prefer_nonstar(g).unwrap();
        label_tree(g, &tree, &grp)
    }

    #[test]
    fn odd_path_pairs_up() {
        let c = construct(&families::path(5), &[5]).unwrap();
        assert_eq!(c.construction, Construction::TreePairing);
    }

    #[test]
    fn path_six_over_z7() {
        let c = construct(&families::path(6), &[7]).unwrap();
        assert!(c.report.is_irregular);
    }

    #[test]
    fn z3z3_table_on_eight_vertices() {
        // classes {0, 1, 2} and {3, .., 7}
        let g = SimpleGraph::new(8, &[(0, 3), (0, 4), (3, 1), (1, 5), (5, 2), (2, 6), (2, 7)]).unwrap();
        let c = construct(&g, &[3, 3]).unwrap();
        assert_eq!(c.construction, Construction::TreeTernaryTable);
    }

    #[test]
    fn ternary_triple_covers_small_exponent_three_cases() {
        let c = construct(&families::path(6), &[3, 3]).unwrap();
        assert_eq!(c.construction, Construction::TreeTernaryTriple);
    }

    #[test]
    fn ternary_gadget_on_long_path() {
        let c = construct(&families::path(26), &[3, 3, 3]).unwrap();
        assert_eq!(c.construction, Construction::TreeTernaryGadget);
    }

    #[test]
    fn cyclic_four_seed() {
        let c = construct(&families::path(8), &[8]).unwrap();
        assert_eq!(c.construction, Construction::TreeCyclicFour);
    }

    #[test]
    fn elementary_binary_at_strength() {
        let c = construct(&families::path(8), &[2, 2, 2]).unwrap();
        assert_eq!(c.construction, Construction::TreeElementaryBinary);
    }

    #[test]
    fn involution_star_at_strength() {
        let c = construct(&families::path(12), &[2, 2, 3]).unwrap();
        assert_eq!(c.construction, Construction::TreeInvolutionStar);
    }

    #[test]
    fn involution_branches_above_strength() {
        assert_eq!(
            construct(&families::path(4), &[2, 2, 2]).unwrap().construction,
            Construction::TreeInvolutionsMany
        );
        assert_eq!(
            construct(&families::path(5), &[2, 2, 2]).unwrap().construction,
            Construction::TreeInvolutionsMany
        );
        assert_eq!(
            construct(&families::path(6), &[2, 2, 2, 2]).unwrap().construction,
            Construction::TreeInvolutionsMany
        );
        assert_eq!(
            construct(&families::path(14), &[2, 2, 2, 2]).unwrap_err(),
            LabelError::Impossible(super::super::Obstruction::BinaryElementary { q: 4 })
        );
    }
}
