//! Graph automorphism search, vertex-transitivity and a few structural predicates.
//!
//! [`find_automorphism`] is an individualise-and-refine backtracking search.
//! Source and target colourings are refined together with the same
//! signature-to-colour map, so the refinement commutes with every automorphism
//! and a failed search is a proof that no automorphism maps `u` to `v`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{connected_components, is_undirected, DiGraph};
use crate::error::{GyroError, Result};
use crate::perm::Permutation;
use crate::subgyro::CosetPartition;

/// True when `perm` maps every arc onto an arc. Since `perm` is a bijection
/// and the arc count is finite, this makes it an automorphism.
pub fn is_automorphism(graph: &DiGraph, perm: &Permutation) -> bool {
    perm.degree() == graph.n() && graph.arcs().all(|(u, v)| graph.has_arc(perm.apply(u), perm.apply(v)))
}

type Signature = (usize, Vec<usize>, Vec<usize>);

fn signature(graph: &DiGraph, colors: &[usize], v: usize) -> Signature {
    let mut out: Vec<usize> = graph.out_neighbors(v).iter().map(|&w| colors[w]).collect();
    let mut inn: Vec<usize> = graph.in_neighbors(v).iter().map(|&w| colors[w]).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (colors[v], out, inn)
}

fn histogram(colors: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

/// Refines both colourings to a common stable partition. Returns false as
/// soon as the colour histograms diverge.
fn refine(graph: &DiGraph, left: &mut Vec<usize>, right: &mut Vec<usize>) -> bool {
    let n = graph.n();
    loop {
        let before = histogram(left).len();
        let ls: Vec<Signature> = (0..n).map(|v| signature(graph, left, v)).collect();
        let rs: Vec<Signature> = (0..n).map(|v| signature(graph, right, v)).collect();
        let mut ids: BTreeMap<&Signature, usize> = ls.iter().chain(rs.iter()).map(|s| (s, 0)).collect();
        for (k, id) in ids.values_mut().enumerate() {
            *id = k;
        }
        *left = ls.iter().map(|s| ids[s]).collect();
        *right = rs.iter().map(|s| ids[s]).collect();
        let (hl, hr) = (histogram(left), histogram(right));
        if hl != hr {
            return false;
        }
        if hl.len() == before {
            return true;
        }
    }
}

fn search(graph: &DiGraph, mut left: Vec<usize>, mut right: Vec<usize>) -> Option<Permutation> {
    if !refine(graph, &mut left, &mut right) {
        return None;
    }
    let n = graph.n();
    let hist = histogram(&left);
    // Smallest non-singleton cell, ties broken by colour.
    let Some((&cell, _)) = hist.iter().filter(|(_, &k)| k > 1).min_by_key(|(&c, &k)| (k, c)) else {
        let mut images = vec![0; n];
        for v in 0..n {
            images[v] = right.iter().position(|&c| c == left[v]).expect("matching histograms");
        }
        let perm = Permutation::from_images(images).expect("discrete colourings give a bijection");
        return is_automorphism(graph, &perm).then_some(perm);
    };
    let fresh = n + hist.len();
    let x = left.iter().position(|&c| c == cell).expect("cell is nonempty");
    let mut l = left.clone();
    l[x] = fresh;
    (0..n).filter(|&y| right[y] == cell).find_map(|y| {
        let mut r = right.clone();
        r[y] = fresh;
        search(graph, l.clone(), r)
    })
}

/// Some automorphism sending `u` to `v`, or `None` when no such automorphism
/// exists. Candidate images are tried in ascending order, so the result is
/// deterministic.
pub fn find_automorphism(graph: &DiGraph, u: usize, v: usize) -> Result<Option<Permutation>> {
    let n = graph.n();
    for x in [u, v] {
        if x >= n {
            return Err(GyroError::ElementOutOfRange { index: x, order: n });
        }
    }
    if u == v {
        return Ok(Some(Permutation::identity(n)));
    }
    let mut left = vec![0; n];
    let mut right = vec![0; n];
    left[u] = 1;
    right[v] = 1;
    Ok(search(graph, left, right))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transitivity {
    pub transitive: bool,
    /// `(base, target)` with no automorphism mapping base to target.
    pub witness: Option<(usize, usize)>,
}

/// Vertex-transitivity: every vertex is the image of vertex 0 under some automorphism.
pub fn vertex_transitivity(graph: &DiGraph) -> Transitivity {
    let n = graph.n();
    let found: Vec<bool> = (1..n)
        .into_par_iter()
        .map(|v| find_automorphism(graph, 0, v).expect("in range").is_some())
        .collect();
    let witness = found.iter().position(|ok| !ok).map(|i| (0, i + 1));
    Transitivity {
        transitive: witness.is_none(),
        witness,
    }
}

pub fn is_vertex_transitive(graph: &DiGraph) -> bool {
    vertex_transitivity(graph).transitive
}

/// Undirected, with every vertex of degree exactly one (so `n` is even).
pub fn is_perfect_matching(graph: &DiGraph) -> bool {
    let n = graph.n();
    n.is_multiple_of(2) && is_undirected(graph) && (0..n).all(|v| graph.out_degree(v) == 1)
}

/// Undirected, connected and 2-regular.
pub fn is_cycle(graph: &DiGraph) -> bool {
    let n = graph.n();
    n >= 3
        && is_undirected(graph)
        && (0..n).all(|v| graph.out_degree(v) == 2)
        && connected_components(graph).is_connected()
}

/// True when the weak components of `graph` are exactly the blocks of `p`.
pub fn components_equal_partition(graph: &DiGraph, p: &CosetPartition) -> Result<bool> {
    if p.covered() != graph.n() {
        return Err(GyroError::VertexCountMismatch {
            graph: graph.n(),
            partition: p.covered(),
        });
    }
    let mut blocks: Vec<Vec<usize>> = p.blocks().iter().map(|b| b.iter().copied().collect()).collect();
    blocks.sort();
    Ok(connected_components(graph).blocks == blocks)
}
