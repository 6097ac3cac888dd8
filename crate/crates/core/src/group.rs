//! Finite Abelian groups given as direct products of cyclic groups.
//!
//! Elements are residue tuples in the factor basis the caller supplied, so
//! `Z6` elements stay single residues mod 6 on input and output. Internally
//! every factor is also split into its prime-power parts; the Chinese
//! Remainder correspondence between the two bases is exposed through
//! [`AbelianGroup::to_refined`] and [`AbelianGroup::from_refined`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::arith::{factorize, gcd, lcm, mod_inverse};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("a group needs at least one cyclic factor")]
    EmptyFactorList,
    #[error("cyclic factor {index} has order {order}, expected at least 2")]
    FactorTooSmall { index: usize, order: u64 },
    #[error("group order overflows 64 bits")]
    OrderOverflow,
    #[error("element has {found} coordinates, group has {expected} factors")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("coordinate {index} is {residue}, must be below {modulus}")]
    ResidueOutOfRange { index: usize, residue: u64, modulus: u64 },
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum InvolutionSubsetError {
    #[error("no {r}-subset of the involutions and zero sums to zero (p = {p})")]
    Infeasible { r: u64, p: u32 },
    #[error("group has {p} even cyclic factors, at least 2 are required")]
    TooFewInvolutions { p: u32 },
    #[error("requested {r} elements but only {max} are available")]
    OutOfRange { r: u64, max: u64 },
}

/// One prime-power cyclic factor of the refined decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RefinedFactor {
    pub prime: u64,
    pub order: u64,
    /// Index of the user-supplied factor this part was split from.
    pub source: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    refined: Vec<RefinedFactor>,
    order: u64,
    /// Positions (user basis) of the even factors, in order.
    even_factors: Vec<usize>,
}

/// A residue tuple, one coordinate per cyclic factor. Ordering is
/// lexicographic on the tuple.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str(")")
    }
}

/// Identity, involutions and inverse pairs `{a, -a}` with `a != -a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClassification {
    pub identity: GroupElement,
    pub involutions: Vec<GroupElement>,
    /// Each pair is stored as `(a, -a)` with `a < -a`; pairs are sorted by `a`.
    pub inverse_pairs: Vec<(GroupElement, GroupElement)>,
}

impl AbelianGroup {
    pub fn new(orders: &[u64]) -> Result<Self, GroupError> {
        if orders.is_empty() {
            return Err(GroupError::EmptyFactorList);
        }
        let mut order = 1u64;
        let mut refined = Vec::new();
        let mut even_factors = Vec::new();
        for (index, &m) in orders.iter().enumerate() {
            if m < 2 {
                return Err(GroupError::FactorTooSmall { index, order: m });
            }
            order = order.checked_mul(m).ok_or(GroupError::OrderOverflow)?;
            if m % 2 == 0 {
                even_factors.push(index);
            }
            for (prime, e) in factorize(m) {
                refined.push(RefinedFactor {
                    prime,
                    order: prime.pow(e),
                    source: index,
                });
            }
        }
        Ok(Self {
            factors: orders.to_vec(),
            refined,
            order,
            even_factors,
        })
    }

    /// The cyclic group of order `m`.
    pub fn cyclic(m: u64) -> Result<Self, GroupError> {
        Self::new(&[m])
    }

    pub fn factor_orders(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn refined_factors(&self) -> &[RefinedFactor] {
        &self.refined
    }

    /// Number of even cyclic factors; equals the number of `Z_{2^e}` parts
    /// after refinement.
    pub fn even_factor_count(&self) -> u32 {
        self.even_factors.len() as u32
    }

    pub fn involution_count(&self) -> u64 {
        (1u64 << self.even_factor_count()) - 1
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.factors.iter().fold(1, |acc, &m| lcm(acc, m))
    }

    /// True when every refined factor has order `prime`, i.e. the group is
    /// `(Z_prime)^q`.
    pub fn is_elementary(&self, prime: u64) -> bool {
        self.refined.iter().all(|f| f.order == prime)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: alloc::vec![0; self.factors.len()],
        }
    }

    /// Validates a residue tuple and wraps it as an element.
    pub fn element(&self, residues: &[u64]) -> Result<GroupElement, GroupError> {
        self.check_dims(residues)?;
        for (index, (&residue, &modulus)) in residues.iter().zip(&self.factors).enumerate() {
            if residue >= modulus {
                return Err(GroupError::ResidueOutOfRange {
                    index,
                    residue,
                    modulus,
                });
            }
        }
        Ok(GroupElement {
            residues: residues.to_vec(),
        })
    }

    /// Reduces arbitrary integers coordinate-wise into an element.
    pub fn reduce(&self, values: &[i64]) -> Result<GroupElement, GroupError> {
        self.check_dims(values)?;
        let residues = values
            .iter()
            .zip(&self.factors)
            .map(|(&v, &m)| (v as i128).rem_euclid(m as i128) as u64)
            .collect();
        Ok(GroupElement { residues })
    }

    pub fn check(&self, x: &GroupElement) -> Result<(), GroupError> {
        self.element(&x.residues).map(|_| ())
    }

    fn check_dims<T>(&self, residues: &[T]) -> Result<(), GroupError> {
        if residues.len() != self.factors.len() {
            return Err(GroupError::DimensionMismatch {
                expected: self.factors.len(),
                found: residues.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_dims(&x.residues)?;
        self.check_dims(&y.residues)?;
        Ok(self.plus(x, y))
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_dims(&x.residues)?;
        Ok(self.negate(x))
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_dims(&x.residues)?;
        self.check_dims(&y.residues)?;
        Ok(self.minus(x, y))
    }

    /// `n·x`; negative `n` gives `|n|·(-x)`.
    pub fn scalar_mul(&self, n: i64, x: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check_dims(&x.residues)?;
        Ok(self.times(n, x))
    }

    pub(crate) fn plus(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let residues = x
            .residues
            .iter()
            .zip(&y.residues)
            .zip(&self.factors)
            .map(|((&a, &b), &m)| {
                let s = a + b;
                if s >= m {
                    s - m
                } else {
                    s
                }
            })
            .collect();
        GroupElement { residues }
    }

    pub(crate) fn add_assign(&self, x: &mut GroupElement, y: &GroupElement) {
        for ((a, &b), &m) in x.residues.iter_mut().zip(&y.residues).zip(&self.factors) {
            *a += b;
            if *a >= m {
                *a -= m;
            }
        }
    }

    pub(crate) fn negate(&self, x: &GroupElement) -> GroupElement {
        let residues = x
            .residues
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| if a == 0 { 0 } else { m - a })
            .collect();
        GroupElement { residues }
    }

    pub(crate) fn minus(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.plus(x, &self.negate(y))
    }

    pub(crate) fn times(&self, n: i64, x: &GroupElement) -> GroupElement {
        let residues = x
            .residues
            .iter()
            .zip(&self.factors)
            .map(|(&a, &m)| ((n as i128 * a as i128).rem_euclid(m as i128)) as u64)
            .collect();
        GroupElement { residues }
    }

    /// Smallest `n >= 1` with `n·x = 0`.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        x.residues
            .iter()
            .zip(&self.factors)
            .fold(1, |acc, (&a, &m)| lcm(acc, m / gcd(a, m)))
    }

    pub fn is_involution(&self, x: &GroupElement) -> bool {
        !x.is_zero() && self.plus(x, x).is_zero()
    }

    /// Position of `x` in lexicographic order (mixed radix, last coordinate
    /// fastest).
    pub fn index_of(&self, x: &GroupElement) -> u64 {
        x.residues
            .iter()
            .zip(&self.factors)
            .fold(0, |acc, (&a, &m)| acc * m + a)
    }

    /// Inverse of [`Self::index_of`]. `index` must be below the group order.
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        debug_assert!(index < self.order);
        let mut residues = alloc::vec![0; self.factors.len()];
        for (slot, &m) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = index % m;
            index /= m;
        }
        GroupElement { residues }
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element_at(i))
    }

    /// Coordinates of `x` in the refined prime-power basis.
    pub fn to_refined(&self, x: &GroupElement) -> Vec<u64> {
        self.refined
            .iter()
            .map(|f| x.residues[f.source] % f.order)
            .collect()
    }

    /// Rebuilds an element from refined coordinates by the Chinese Remainder
    /// Theorem within each user factor.
    pub fn from_refined(&self, refined: &[u64]) -> Result<GroupElement, GroupError> {
        if refined.len() != self.refined.len() {
            return Err(GroupError::DimensionMismatch {
                expected: self.refined.len(),
                found: refined.len(),
            });
        }
        let mut residues = alloc::vec![0u64; self.factors.len()];
        for (f, &r) in self.refined.iter().zip(refined) {
            if r >= f.order {
                return Err(GroupError::ResidueOutOfRange {
                    index: f.source,
                    residue: r,
                    modulus: f.order,
                });
            }
            let m = self.factors[f.source];
            let cofactor = m / f.order;
            // cofactor is coprime to f.order by construction
            let inv = mod_inverse(cofactor % f.order, f.order).unwrap_or(0);
            let term = (r as u128 * inv as u128 % f.order as u128) * cofactor as u128;
            residues[f.source] = ((residues[f.source] as u128 + term) % m as u128) as u64;
        }
        Ok(GroupElement { residues })
    }

    /// Involution (or zero) selected by a bitmask over the even factors; bit
    /// `p-1` is the first even factor, so ascending masks are ascending in
    /// lexicographic order.
    pub(crate) fn involution_from_mask(&self, mask: u64) -> GroupElement {
        let p = self.even_factors.len();
        let mut x = self.zero();
        for (j, &pos) in self.even_factors.iter().enumerate() {
            if mask >> (p - 1 - j) & 1 == 1 {
                x.residues[pos] = self.factors[pos] / 2;
            }
        }
        x
    }

    /// Splits the group into identity, involutions and inverse pairs, both
    /// lists in lexicographic order.
    pub fn classify(&self) -> ElementClassification {
        let involutions = (1..=self.involution_count())
            .map(|mask| self.involution_from_mask(mask))
            .collect();
        let mut inverse_pairs = Vec::new();
        for x in self.elements() {
            let y = self.negate(&x);
            if x < y {
                inverse_pairs.push((x, y));
            }
        }
        ElementClassification {
            identity: self.zero(),
            involutions,
            inverse_pairs,
        }
    }

    /// Sum of every element of the group: the unique involution when there is
    /// exactly one, zero otherwise.
    pub fn sum_of_all_elements(&self) -> GroupElement {
        if self.even_factor_count() == 1 {
            self.involution_from_mask(1)
        } else {
            self.zero()
        }
    }

    /// Picks `r` distinct elements of `I = {0} ∪ involutions` summing to zero.
    ///
    /// Requires at least two even factors (`p >= 2`). Such a set exists iff
    /// `r ∉ {2, 2^p - 2}`. Small `r` take the first `r-1` elements of `I` in
    /// lexicographic order and close with their sum, shifting two elements by
    /// the involution of the first even factor if the sum is already taken;
    /// large `r` complement a small solution. The result is sorted.
    pub fn zero_sum_involution_subset(
        &self,
        r: u64,
    ) -> Result<Vec<GroupElement>, InvolutionSubsetError> {
        let p = self.even_factor_count();
        if p < 2 {
            return Err(InvolutionSubsetError::TooFewInvolutions { p });
        }
        let masks = zero_sum_masks(p, r)?;
        Ok(masks
            .into_iter()
            .map(|m| self.involution_from_mask(m))
            .collect())
    }

    /// Parses an element written as `(1,2)`; a bare `3` is accepted for rank-1
    /// groups.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let err = || GroupError::Parse {
            what: "group element",
            input: s.to_string(),
        };
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(t);
        let residues = inner
            .split(',')
            .map(|c| c.trim().parse::<u64>().map_err(|_| err()))
            .collect::<Result<Vec<_>, _>>()?;
        self.element(&residues)
    }
}

/// Zero-sum subsets of `(Z_2)^p` as bitmasks, sorted ascending.
fn zero_sum_masks(p: u32, r: u64) -> Result<Vec<u64>, InvolutionSubsetError> {
    let full = 1u64 << p;
    if r > full {
        return Err(InvolutionSubsetError::OutOfRange { r, max: full });
    }
    if r == 2 || r == full - 2 {
        return Err(InvolutionSubsetError::Infeasible { r, p });
    }
    let mut masks: Vec<u64> = if r == 0 {
        Vec::new()
    } else if r == 1 {
        alloc::vec![0]
    } else if r == full - 1 {
        (1..full).collect()
    } else if r == full {
        (0..full).collect()
    } else if r <= full / 2 {
        let top = full / 2;
        let mut list: Vec<u64> = (0..r - 1).collect();
        let s = list.iter().fold(0, |acc, &m| acc ^ m);
        if s >= r - 1 {
            list.push(s);
        } else {
            let partner = if s != 0 { s - 1 } else { 1 };
            list[s as usize] ^= top;
            list[partner as usize] ^= top;
            list.push(s);
        }
        list
    } else {
        let small = zero_sum_masks(p, full - r)?;
        (0..full).filter(|m| !small.contains(m)).collect()
    };
    masks.sort_unstable();
    Ok(masks)
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            write!(f, "Z{m}")?;
        }
        Ok(())
    }
}

/// Accepts `Z4xZ3`, `4x3`, `z4 x 3`; case-insensitive.
impl FromStr for AbelianGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GroupError::Parse {
            what: "group spec",
            input: s.to_string(),
        };
        let lower = s.trim().to_ascii_lowercase();
        if lower.is_empty() {
            return Err(err());
        }
        let orders = lower
            .split('x')
            .map(|part| {
                let part = part.trim();
                let digits = part.strip_prefix('z').unwrap_or(part).trim();
                digits.parse::<u64>().map_err(|_| err())
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&orders)
    }
}
