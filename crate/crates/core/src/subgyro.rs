//! Generated closures, subgyrogroups, L-subgyrogroups and left-coset partitions.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{GyroError, Result};
use crate::gyrogroup::{Element, Gyrogroup};

pub type ElementSet = BTreeSet<Element>;

/// Default cap on the order for [`all_subgyrogroups`]; the scan is `2^(n-1)`.
pub const DEFAULT_ENUMERATION_BOUND: usize = 16;

/// A duplicate-free set of elements of a particular gyrogroup, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct GenSet {
    elements: Vec<Element>,
}

impl GenSet {
    pub fn new(g: &Gyrogroup, elements: impl IntoIterator<Item = Element>) -> Result<Self> {
        let mut v: Vec<Element> = elements.into_iter().collect();
        for &x in &v {
            g.check(x)?;
        }
        v.sort_unstable();
        if let Some(w) = v.windows(2).find(|w| w[0] == w[1]) {
            return Err(GyroError::DuplicateElement(w[0]));
        }
        Ok(GenSet { elements: v })
    }

    pub fn empty() -> Self {
        GenSet { elements: vec![] }
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.elements.iter().copied()
    }

    pub fn to_set(&self) -> ElementSet {
        self.elements.iter().copied().collect()
    }

    /// Errors if the identity is present; Cayley graphs exclude it.
    pub fn require_no_identity(&self, g: &Gyrogroup) -> Result<()> {
        if self.contains(g.identity()) {
            Err(GyroError::IdentityInGenerators(g.identity()))
        } else {
            Ok(())
        }
    }
}

fn closure(g: &Gyrogroup, s: &GenSet, step: impl Fn(Element, Element) -> Element) -> ElementSet {
    let mut seen = vec![false; g.order()];
    let mut stack: Vec<Element> = s.iter().collect();
    for &x in &stack {
        seen[x] = true;
    }
    while let Some(x) = stack.pop() {
        for t in s.iter() {
            let y = step(t, x);
            if !std::mem::replace(&mut seen[y], true) {
                stack.push(y);
            }
        }
    }
    g.elements().filter(|&x| seen[x]).collect()
}

/// Least superset of `S` closed under `x ↦ s ⊕ x` for `s ∈ S`: the set of all
/// left-nested products of members of `S`. The empty set closes to itself.
pub fn left_closure(g: &Gyrogroup, s: &GenSet) -> ElementSet {
    closure(g, s, |t, x| g.add(t, x))
}

/// Least superset of `S` closed under `x ↦ x ⊕ s` for `s ∈ S`.
pub fn right_closure(g: &Gyrogroup, s: &GenSet) -> ElementSet {
    closure(g, s, |t, x| g.add(x, t))
}

/// Why a set fails to be an (L-)subgyrogroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgyroFailure {
    MissingIdentity,
    /// `a ⊕ b ∉ H`.
    NotClosedUnderAdd {
        a: Element,
        b: Element,
    },
    /// `⊖a ∉ H`.
    NotClosedUnderNeg {
        a: Element,
    },
    /// `gyr[a,b](h) ∉ H`.
    GyrationEscapes {
        a: Element,
        b: Element,
        h: Element,
    },
}

fn membership(g: &Gyrogroup, h: &ElementSet) -> Result<Vec<bool>> {
    if h.is_empty() {
        return Err(GyroError::EmptySet);
    }
    let mut m = vec![false; g.order()];
    for &x in h {
        m[g.check(x)?] = true;
    }
    Ok(m)
}

fn escapes(g: &Gyrogroup, member: &[bool], h: &ElementSet, a: Element, b: Element) -> Option<Element> {
    if g.gyr_is_identity(a, b) {
        return None;
    }
    let map = g.gyr(a, b);
    h.iter().copied().find(|&x| !member[map[x]])
}

fn sub_failure(g: &Gyrogroup, member: &[bool], h: &ElementSet) -> Option<SubgyroFailure> {
    if !member[g.identity()] {
        return Some(SubgyroFailure::MissingIdentity);
    }
    for &a in h {
        for &b in h {
            if !member[g.add(a, b)] {
                return Some(SubgyroFailure::NotClosedUnderAdd { a, b });
            }
        }
    }
    if let Some(&a) = h.iter().find(|&&a| !member[g.neg(a)]) {
        return Some(SubgyroFailure::NotClosedUnderNeg { a });
    }
    // Finite sets: gyr[a,b](H) ⊆ H already forces equality since gyrations are injective.
    for &a in h {
        for &b in h {
            if let Some(x) = escapes(g, member, h, a, b) {
                return Some(SubgyroFailure::GyrationEscapes { a, b, h: x });
            }
        }
    }
    None
}

fn l_failure(g: &Gyrogroup, member: &[bool], h: &ElementSet) -> Option<SubgyroFailure> {
    sub_failure(g, member, h).or_else(|| {
        g.elements().find_map(|a| {
            h.iter()
                .find_map(|&b| escapes(g, member, h, a, b).map(|x| SubgyroFailure::GyrationEscapes { a, b, h: x }))
        })
    })
}

/// First reason (in a fixed scan order) why `H` is not a subgyrogroup.
pub fn subgyrogroup_failure(g: &Gyrogroup, h: &ElementSet) -> Result<Option<SubgyroFailure>> {
    let member = membership(g, h)?;
    Ok(sub_failure(g, &member, h))
}

/// First reason why `H` is not an L-subgyrogroup: either it is not a
/// subgyrogroup, or `gyr[a,h](H) ≠ H` for some `a ∈ G`, `h ∈ H`.
pub fn l_subgyrogroup_failure(g: &Gyrogroup, h: &ElementSet) -> Result<Option<SubgyroFailure>> {
    let member = membership(g, h)?;
    Ok(l_failure(g, &member, h))
}

pub fn is_subgyrogroup(g: &Gyrogroup, h: &ElementSet) -> Result<bool> {
    Ok(subgyrogroup_failure(g, h)?.is_none())
}

pub fn is_l_subgyrogroup(g: &Gyrogroup, h: &ElementSet) -> Result<bool> {
    Ok(l_subgyrogroup_failure(g, h)?.is_none())
}

/// A validated subgyrogroup carrier together with its L flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subgyrogroup {
    carrier: ElementSet,
    is_l: bool,
}

impl Subgyrogroup {
    pub fn new(g: &Gyrogroup, carrier: ElementSet) -> Result<Self> {
        let member = membership(g, &carrier)?;
        if sub_failure(g, &member, &carrier).is_some() {
            return Err(GyroError::NotSubgyrogroup(carrier.into_iter().collect()));
        }
        let is_l = l_failure(g, &member, &carrier).is_none();
        Ok(Subgyrogroup { carrier, is_l })
    }

    pub fn trivial(g: &Gyrogroup) -> Self {
        Subgyrogroup {
            carrier: [g.identity()].into(),
            is_l: true,
        }
    }

    pub fn whole(g: &Gyrogroup) -> Self {
        Subgyrogroup {
            carrier: g.elements().collect(),
            is_l: true,
        }
    }

    pub fn carrier(&self) -> &ElementSet {
        &self.carrier
    }

    pub fn is_l(&self) -> bool {
        self.is_l
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }
}

/// The left cosets `g ⊕ H` of an L-subgyrogroup, ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetPartition {
    subgroup: Subgyrogroup,
    blocks: Vec<ElementSet>,
}

impl CosetPartition {
    pub fn subgroup(&self) -> &Subgyrogroup {
        &self.subgroup
    }

    pub fn blocks(&self) -> &[ElementSet] {
        &self.blocks
    }

    /// Canonical representatives: the least element of each block.
    pub fn representatives(&self) -> Vec<Element> {
        self.blocks
            .iter()
            .map(|b| *b.first().expect("nonempty block"))
            .collect()
    }

    pub fn index(&self) -> usize {
        self.blocks.len()
    }

    pub fn covered(&self) -> usize {
        self.blocks.iter().map(BTreeSet::len).sum()
    }
}

/// Partitions `G` into left cosets of `H`. Requires `H` to be an L-subgyrogroup
/// and re-checks disjointness, coverage and equal block sizes on every call.
pub fn left_cosets(g: &Gyrogroup, h: &Subgyrogroup) -> Result<CosetPartition> {
    if !h.is_l {
        return Err(GyroError::NotLSubgyrogroup(h.carrier.iter().copied().collect()));
    }
    let mut blocks: Vec<ElementSet> = g
        .elements()
        .map(|x| h.carrier.iter().map(|&y| g.add(x, y)).collect())
        .collect();
    blocks.sort();
    blocks.dedup();

    let mut owner = vec![usize::MAX; g.order()];
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != h.len() {
            return Err(GyroError::BrokenPartition(format!("block {b:?} has size {}", b.len())));
        }
        for &x in b {
            if owner[x] != usize::MAX {
                return Err(GyroError::BrokenPartition(format!("{x} lies in two blocks")));
            }
            owner[x] = i;
        }
    }
    if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(GyroError::BrokenPartition(format!("{x} is uncovered")));
    }
    Ok(CosetPartition {
        subgroup: h.clone(),
        blocks,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagrangeCheck {
    pub order: usize,
    pub subgroup_order: usize,
    pub index: usize,
    pub divides: bool,
    pub holds: bool,
}

/// `|H|` divides `|G|` and `[G:H]·|H| = |G|` on the computed coset partition.
pub fn verify_lagrange(g: &Gyrogroup, h: &Subgyrogroup) -> Result<LagrangeCheck> {
    let partition = left_cosets(g, h)?;
    let (order, subgroup_order, index) = (g.order(), h.len(), partition.index());
    let divides = order % subgroup_order == 0;
    Ok(LagrangeCheck {
        order,
        subgroup_order,
        index,
        divides,
        holds: divides && index * subgroup_order == order,
    })
}

/// Every subgyrogroup (or only the L-subgyrogroups), sorted by size then
/// lexicographically. Refuses orders above `bound` (and above 64).
pub fn all_subgyrogroups(g: &Gyrogroup, l_only: bool, bound: usize) -> Result<Vec<Subgyrogroup>> {
    let n = g.order();
    if n > bound || n > 64 {
        return Err(GyroError::OrderTooLarge {
            order: n,
            bound: bound.min(64),
        });
    }
    let e = g.identity();
    let others: Vec<Element> = g.elements().filter(|&x| x != e).collect();
    let bit = |x: Element| 1u64 << x;
    let count = 1u64 << others.len();

    let mut found: Vec<Subgyrogroup> = (0..count)
        .into_par_iter()
        .filter_map(|mask| {
            let mut set = bit(e);
            for (i, &x) in others.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    set |= bit(x);
                }
            }
            let members: Vec<Element> = (0..n).filter(|&x| set & bit(x) != 0).collect();
            // Cheap closure filter before the full check.
            let closed = members
                .iter()
                .all(|&a| members.iter().all(|&b| set & bit(g.add(a, b)) != 0));
            if !closed {
                return None;
            }
            let carrier: ElementSet = members.into_iter().collect();
            let member: Vec<bool> = (0..n).map(|x| set & bit(x) != 0).collect();
            if sub_failure(g, &member, &carrier).is_some() {
                return None;
            }
            let is_l = l_failure(g, &member, &carrier).is_none();
            (is_l || !l_only).then_some(Subgyrogroup { carrier, is_l })
        })
        .collect();
    found.sort_by(|a, b| (a.len(), &a.carrier).cmp(&(b.len(), &b.carrier)));
    Ok(found)
}
