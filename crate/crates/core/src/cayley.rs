//! Left- and right-Cayley graphs of a gyrogroup and the gyration side
//! conditions that appear as hypotheses of the structural theorems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{GyroError, Result};
use crate::gyrogroup::{Element, Gyrogroup};
use crate::subgyro::{ElementSet, GenSet};

/// Simple directed graph on `0..n` without self-loops. Parallel arcs produced
/// by different generators are stored once, with the set of generators as label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    out_adj: Vec<BTreeSet<usize>>,
    in_adj: Vec<BTreeSet<usize>>,
    labels: BTreeMap<(usize, usize), BTreeSet<Element>>,
}

impl DiGraph {
    pub fn empty(n: usize) -> Self {
        DiGraph {
            out_adj: vec![BTreeSet::new(); n],
            in_adj: vec![BTreeSet::new(); n],
            labels: BTreeMap::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = DiGraph::empty(n);
        for (u, v) in arcs {
            g.insert(u, v, None)?;
        }
        Ok(g)
    }

    /// The same graph with vertex `v` renamed to `perm[v]`; labels are kept.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut g = DiGraph::empty(self.n());
        for ((u, v), ls) in &self.labels {
            g.insert(perm[*u], perm[*v], None)?;
            g.labels.insert((perm[*u], perm[*v]), ls.clone());
        }
        Ok(g)
    }

    fn insert(&mut self, u: usize, v: usize, label: Option<Element>) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(GyroError::ElementOutOfRange { index: x, order: n });
            }
        }
        if u == v {
            return Err(GyroError::SelfLoop(u));
        }
        self.out_adj[u].insert(v);
        self.in_adj[v].insert(u);
        let entry = self.labels.entry((u, v)).or_default();
        entry.extend(label);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.out_adj.len()
    }

    pub fn out_neighbors(&self, u: usize) -> &BTreeSet<usize> {
        &self.out_adj[u]
    }

    pub fn in_neighbors(&self, u: usize) -> &BTreeSet<usize> {
        &self.in_adj[u]
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out_adj[u].len()
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_adj[u].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out_adj.get(u).is_some_and(|s| s.contains(&v))
    }

    pub fn arc_count(&self) -> usize {
        self.labels.len()
    }

    /// All arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.labels.keys().copied()
    }

    /// Generators that produce the arc `u → v` (empty for unlabeled graphs).
    pub fn label(&self, u: usize, v: usize) -> Option<&BTreeSet<Element>> {
        self.labels.get(&(u, v))
    }

    /// Neighbours ignoring direction.
    pub fn neighbors(&self, u: usize) -> BTreeSet<usize> {
        self.out_adj[u].union(&self.in_adj[u]).copied().collect()
    }
}

/// Which Cayley graph to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Side {
    /// `u → v` iff `v = s ⊕ u`.
    Left,
    /// `u → v` iff `v = u ⊕ s`.
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "L",
            Side::Right => "R",
        })
    }
}

/// `S` is symmetric when `⊖s ∈ S` for every `s ∈ S`.
pub fn is_symmetric_set(g: &Gyrogroup, s: &GenSet) -> Result<bool> {
    s.require_no_identity(g)?;
    Ok(s.iter().all(|x| s.contains(g.neg(x))))
}

pub fn build_cayley(g: &Gyrogroup, s: &GenSet, side: Side) -> Result<DiGraph> {
    s.require_no_identity(g)?;
    let mut graph = DiGraph::empty(g.order());
    for u in g.elements() {
        for t in s.iter() {
            let v = match side {
                Side::Left => g.add(t, u),
                Side::Right => g.add(u, t),
            };
            graph.insert(u, v, Some(t))?;
        }
    }
    Ok(graph)
}

/// L-Cayley graph: `u → v` iff `v = s ⊕ u` for some `s ∈ S`.
pub fn build_lcay(g: &Gyrogroup, s: &GenSet) -> Result<DiGraph> {
    build_cayley(g, s, Side::Left)
}

/// R-Cayley graph: `u → v` iff `v = u ⊕ s` for some `s ∈ S`.
pub fn build_rcay(g: &Gyrogroup, s: &GenSet) -> Result<DiGraph> {
    build_cayley(g, s, Side::Right)
}

/// The lexicographically least arc whose reverse is missing.
pub fn one_way_arc(graph: &DiGraph) -> Option<(usize, usize)> {
    graph.arcs().find(|&(u, v)| !graph.has_arc(v, u))
}

pub fn is_undirected(graph: &DiGraph) -> bool {
    one_way_arc(graph).is_none()
}

/// Weak components (arcs taken in both directions), each sorted, ordered by least vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub blocks: Vec<Vec<usize>>,
    /// Whether the source graph was undirected, i.e. whether these are
    /// components in the undirected sense.
    pub undirected: bool,
}

impl Components {
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_connected(&self) -> bool {
        self.blocks.len() <= 1
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn connected_components(graph: &DiGraph) -> Components {
    let n = graph.n();
    let mut parent: Vec<usize> = (0..n).collect();
    for (u, v) in graph.arcs() {
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru != rv {
            // The smaller root wins so roots are block minima.
            parent[ru.max(rv)] = ru.min(rv);
        }
    }
    let mut by_root: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        let r = find(&mut parent, x);
        by_root.entry(r).or_default().push(x);
    }
    Components {
        blocks: by_root.into_values().collect(),
        undirected: is_undirected(graph),
    }
}

/// Gyration side conditions on a generating set `S`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GyrCondition {
    /// `gyr[g,s]` is the identity map for all `g ∈ G`, `s ∈ S`.
    IdentityOnGxS,
    /// `gyr[g,s](S) = S` for all `g ∈ G`, `s ∈ S`.
    SetwiseGxS,
    /// `gyr[g,g'](S) = S` for all `g, g' ∈ G`.
    SetwiseGxG,
    /// `gyr[g,h](S) = S` for all `g ∈ G`, `h ∈ H`.
    SetwiseGxH(ElementSet),
    /// `gyr[g,s](s) ∈ S` for all `g ∈ G`, `s ∈ S`.
    PointInS,
}

impl fmt::Display for GyrCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GyrCondition::IdentityOnGxS => f.write_str("gyr[g,s] = I for g in G, s in S"),
            GyrCondition::SetwiseGxS => f.write_str("gyr[g,s](S) = S for g in G, s in S"),
            GyrCondition::SetwiseGxG => f.write_str("gyr[g,g'](S) = S for g, g' in G"),
            GyrCondition::SetwiseGxH(h) => write!(f, "gyr[g,h](S) = S for g in G, h in {h:?}"),
            GyrCondition::PointInS => f.write_str("gyr[g,s](s) in S for g in G, s in S"),
        }
    }
}

/// A failing instance `(g, h, x)`: `gyr[g,h]` moves `x`, or sends `x` outside `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GyrWitness {
    pub g: Element,
    pub h: Element,
    pub x: Element,
}

/// Evaluates `mode` and returns the lexicographically least `(g, h, x)` witness
/// on failure, or `None` when the condition holds.
pub fn gyr_condition_failure(g: &Gyrogroup, s: &GenSet, mode: &GyrCondition) -> Result<Option<GyrWitness>> {
    let escapes = |a: Element, b: Element| -> Option<Element> {
        if g.gyr_is_identity(a, b) {
            return None;
        }
        s.iter().find(|&x| !s.contains(g.gyr_apply(a, b, x)))
    };
    let second: Vec<Element> = match mode {
        GyrCondition::SetwiseGxG => g.elements().collect(),
        GyrCondition::SetwiseGxH(h) => {
            for &x in h {
                g.check(x)?;
            }
            h.iter().copied().collect()
        }
        _ => s.iter().collect(),
    };
    let witness = g.elements().find_map(|a| {
        second.iter().find_map(|&b| {
            let x = match mode {
                GyrCondition::IdentityOnGxS => g.elements().find(|&x| g.gyr_apply(a, b, x) != x),
                GyrCondition::PointInS => (!s.contains(g.gyr_apply(a, b, b))).then_some(b),
                _ => escapes(a, b),
            };
            x.map(|x| GyrWitness { g: a, h: b, x })
        })
    });
    Ok(witness)
}

pub fn check_gyr_condition(g: &Gyrogroup, s: &GenSet, mode: &GyrCondition) -> Result<bool> {
    Ok(gyr_condition_failure(g, s, mode)?.is_none())
}
