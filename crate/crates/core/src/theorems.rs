//! Executable hypothesis ⇒ conclusion checks for the Cayley-graph theorems,
//! and an exhaustive sweep over generating sets.
//!
//! Hypothesis and conclusion are always evaluated independently; nothing here
//! assumes a theorem holds. An inconsistent report therefore means either a
//! false theorem or (far more likely) a bug somewhere below.

use std::cell::OnceCell;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{components_equal_partition, is_perfect_matching, vertex_transitivity, Transitivity};
use crate::cayley::{
    build_lcay, build_rcay, connected_components, gyr_condition_failure, is_symmetric_set, one_way_arc, Components,
    DiGraph, GyrCondition, GyrWitness,
};
use crate::error::{GyroError, Result};
use crate::gyrogroup::{Element, Gyrogroup};
use crate::subgyro::{
    l_subgyrogroup_failure, left_closure, left_cosets, right_closure, ElementSet, GenSet, SubgyroFailure, Subgyrogroup,
};

/// Upper bound on the number of generating sets a sweep may examine.
pub const MAX_CANDIDATE_SETS: u128 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TheoremId {
    /// LCay(G,S) is undirected iff S is symmetric.
    LUndirected,
    /// For symmetric S: LCay(G,S) is connected iff S left-generates G.
    LConnected,
    /// For s = ⊖s ≠ e: LCay(G,{s}) is a perfect matching, hence vertex-transitive.
    Order2Matching,
    /// Symmetric S with gyr[g,s] = I for all g, s ⇒ LCay(G,S) vertex-transitive.
    LTransitive,
    /// Symmetric S with gyr[g,s](S) = S for all g, s ⇒ RCay(G,S) undirected.
    RUndirectedFwd,
    /// RCay(G,S) undirected ⇒ gyr[g,s]s ∈ S for all g, s.
    RUndirectedConv,
    /// Symmetric S with gyr[g,g'](S) = S for all g, g' ⇒ RCay(G,S) vertex-transitive.
    RTransitive,
    /// Symmetric S right-generating an L-subgyrogroup H with gyr[g,h](S) = S
    /// ⇒ the components of RCay(G,S) are the left cosets of H.
    ComponentsCosets,
}

impl TheoremId {
    pub const ALL: [TheoremId; 8] = [
        TheoremId::LUndirected,
        TheoremId::LConnected,
        TheoremId::Order2Matching,
        TheoremId::LTransitive,
        TheoremId::RUndirectedFwd,
        TheoremId::RUndirectedConv,
        TheoremId::RTransitive,
        TheoremId::ComponentsCosets,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::LUndirected => "L_UNDIRECTED",
            TheoremId::LConnected => "L_CONNECTED",
            TheoremId::Order2Matching => "ORDER2_MATCHING",
            TheoremId::LTransitive => "L_TRANSITIVE",
            TheoremId::RUndirectedFwd => "R_UNDIRECTED_FWD",
            TheoremId::RUndirectedConv => "R_UNDIRECTED_CONV",
            TheoremId::RTransitive => "R_TRANSITIVE",
            TheoremId::ComponentsCosets => "COMPONENTS_COSETS",
        }
    }

    pub fn is_biconditional(self) -> bool {
        matches!(self, TheoremId::LUndirected | TheoremId::LConnected)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = GyroError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_uppercase().replace('-', "_");
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == key)
            .ok_or_else(|| GyroError::UnknownTheorem(s.to_string()))
    }
}

/// Evidence attached to a report: why the conclusion (or else the hypothesis) fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// An arc `u → v` without its reverse.
    OneWayArc { u: usize, v: usize },
    /// A generator whose inverse is missing from `S`.
    MissingInverse { s: Element },
    /// An element outside a generated closure.
    NotGenerated { x: Element },
    /// The graph's weak components.
    Components { blocks: Vec<Vec<usize>> },
    /// No automorphism maps `base` to `target`.
    NotTransitive { base: usize, target: usize },
    /// A graph vertex whose degree rules out a perfect matching.
    Degree { vertex: usize, degree: usize },
    /// A generator that is not self-inverse.
    NotSelfInverse { s: Element },
    /// A failing gyration instance.
    Gyration(GyrWitness),
    /// `H` is not an L-subgyrogroup.
    Subgyrogroup {
        carrier: Vec<Element>,
        failure: Option<SubgyroFailure>,
    },
    /// Supplied `H` differs from the right closure of `S`.
    ClosureMismatch { closure: Vec<Element> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub generators: Vec<Element>,
    /// False when the statement does not cover this `S` (then `consistent` is true).
    pub applicable: bool,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub consistent: bool,
    pub witness: Option<Witness>,
}

impl TheoremReport {
    /// Conclusion holds although the hypothesis does not.
    pub fn is_converse_failure(&self) -> bool {
        self.applicable && !self.theorem.is_biconditional() && !self.hypothesis && self.conclusion
    }
}

impl fmt::Display for TheoremReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<18} S={:?} hypothesis={} conclusion={} {}",
            self.theorem.as_str(),
            self.generators,
            self.hypothesis,
            self.conclusion,
            match (self.applicable, self.consistent) {
                (false, _) => "n/a",
                (true, true) => "consistent",
                (true, false) => "VIOLATION",
            }
        )?;
        if let Some(w) = &self.witness {
            write!(f, " witness={w:?}")?;
        }
        Ok(())
    }
}

/// Memoised facts about one `(G, S)` pair, shared across theorem checks.
struct Lab<'a> {
    g: &'a Gyrogroup,
    s: &'a GenSet,
    missing_inverse: Option<Element>,
    lcay: OnceCell<DiGraph>,
    rcay: OnceCell<DiGraph>,
    l_components: OnceCell<Components>,
    l_transitivity: OnceCell<Transitivity>,
    r_transitivity: OnceCell<Transitivity>,
}

impl<'a> Lab<'a> {
    fn new(g: &'a Gyrogroup, s: &'a GenSet) -> Result<Self> {
        // Also rejects e ∈ S.
        is_symmetric_set(g, s)?;
        Ok(Lab {
            g,
            s,
            missing_inverse: s.iter().find(|&x| !s.contains(g.neg(x))),
            lcay: OnceCell::new(),
            rcay: OnceCell::new(),
            l_components: OnceCell::new(),
            l_transitivity: OnceCell::new(),
            r_transitivity: OnceCell::new(),
        })
    }

    fn symmetric(&self) -> bool {
        self.missing_inverse.is_none()
    }

    fn lcay(&self) -> &DiGraph {
        self.lcay
            .get_or_init(|| build_lcay(self.g, self.s).expect("checked in Lab::new"))
    }

    fn rcay(&self) -> &DiGraph {
        self.rcay
            .get_or_init(|| build_rcay(self.g, self.s).expect("checked in Lab::new"))
    }

    fn l_components(&self) -> &Components {
        self.l_components.get_or_init(|| connected_components(self.lcay()))
    }

    fn l_transitivity(&self) -> &Transitivity {
        self.l_transitivity.get_or_init(|| vertex_transitivity(self.lcay()))
    }

    fn r_transitivity(&self) -> &Transitivity {
        self.r_transitivity.get_or_init(|| vertex_transitivity(self.rcay()))
    }

    fn condition(&self, mode: &GyrCondition) -> Option<GyrWitness> {
        gyr_condition_failure(self.g, self.s, mode).expect("H validated by caller")
    }

    fn asymmetry(&self) -> Option<Witness> {
        self.missing_inverse.map(|s| Witness::MissingInverse { s })
    }

    fn check(&self, id: TheoremId, aux: Option<&ElementSet>) -> Result<TheoremReport> {
        let mut applicable = true;
        let (hypothesis, conclusion, witness) = match id {
            TheoremId::LUndirected => {
                let arc = one_way_arc(self.lcay());
                let w = arc
                    .map(|(u, v)| Witness::OneWayArc { u, v })
                    .or_else(|| self.asymmetry());
                (self.symmetric(), arc.is_none(), w)
            }
            TheoremId::LConnected => {
                // The statement covers symmetric S; the empty set is excluded so
                // that the trivial gyrogroup does not read as a counterexample.
                applicable = self.symmetric() && !self.s.is_empty();
                let closure = left_closure(self.g, self.s);
                let missing = self.g.elements().find(|x| !closure.contains(x));
                let comps = self.l_components();
                let w = if !comps.is_connected() {
                    Some(Witness::Components {
                        blocks: comps.blocks.clone(),
                    })
                } else {
                    missing.map(|x| Witness::NotGenerated { x })
                };
                (missing.is_none(), comps.is_connected(), w)
            }
            TheoremId::Order2Matching => {
                applicable = self.s.len() == 1;
                let not_involution = self.s.iter().find(|&x| self.g.neg(x) != x);
                let hypothesis = applicable && not_involution.is_none();
                let graph = self.lcay();
                let matching = is_perfect_matching(graph);
                let t = self.l_transitivity();
                let w = if !matching {
                    (0..graph.n())
                        .map(|v| (v, graph.neighbors(v).len()))
                        .find(|&(_, d)| d != 1)
                        .map(|(vertex, degree)| Witness::Degree { vertex, degree })
                        .or_else(|| one_way_arc(graph).map(|(u, v)| Witness::OneWayArc { u, v }))
                } else if let Some((base, target)) = t.witness {
                    Some(Witness::NotTransitive { base, target })
                } else {
                    not_involution.map(|s| Witness::NotSelfInverse { s })
                };
                (hypothesis, matching && t.transitive, w)
            }
            TheoremId::LTransitive => {
                let cond = self.condition(&GyrCondition::IdentityOnGxS);
                let t = self.l_transitivity();
                let w = t
                    .witness
                    .map(|(base, target)| Witness::NotTransitive { base, target })
                    .or_else(|| self.asymmetry())
                    .or_else(|| cond.map(Witness::Gyration));
                (self.symmetric() && cond.is_none(), t.transitive, w)
            }
            TheoremId::RUndirectedFwd => {
                let cond = self.condition(&GyrCondition::SetwiseGxS);
                let arc = one_way_arc(self.rcay());
                let w = arc
                    .map(|(u, v)| Witness::OneWayArc { u, v })
                    .or_else(|| self.asymmetry())
                    .or_else(|| cond.map(Witness::Gyration));
                (self.symmetric() && cond.is_none(), arc.is_none(), w)
            }
            TheoremId::RUndirectedConv => {
                let cond = self.condition(&GyrCondition::PointInS);
                let arc = one_way_arc(self.rcay());
                let w = cond
                    .map(Witness::Gyration)
                    .or_else(|| arc.map(|(u, v)| Witness::OneWayArc { u, v }));
                (arc.is_none(), cond.is_none(), w)
            }
            TheoremId::RTransitive => {
                let cond = self.condition(&GyrCondition::SetwiseGxG);
                let t = self.r_transitivity();
                let w = t
                    .witness
                    .map(|(base, target)| Witness::NotTransitive { base, target })
                    .or_else(|| self.asymmetry())
                    .or_else(|| cond.map(Witness::Gyration));
                (self.symmetric() && cond.is_none(), t.transitive, w)
            }
            TheoremId::ComponentsCosets => self.components_cosets(aux)?,
        };
        let consistent = !applicable
            || if id.is_biconditional() {
                hypothesis == conclusion
            } else {
                !hypothesis || conclusion
            };
        Ok(TheoremReport {
            theorem: id,
            generators: self.s.as_slice().to_vec(),
            applicable,
            hypothesis,
            conclusion,
            consistent,
            witness,
        })
    }

    fn components_cosets(&self, aux: Option<&ElementSet>) -> Result<(bool, bool, Option<Witness>)> {
        let closure = right_closure(self.g, self.s);
        let h = match aux {
            Some(h) => {
                for &x in h {
                    self.g.check(x)?;
                }
                h.clone()
            }
            None => closure.clone(),
        };
        let closure_matches = h == closure;
        let l_failure = if h.is_empty() {
            None
        } else {
            l_subgyrogroup_failure(self.g, &h)?
        };
        let is_l = !h.is_empty() && l_failure.is_none();
        let cond = self.condition(&GyrCondition::SetwiseGxH(h.clone()));
        let hypothesis = self.symmetric() && closure_matches && is_l && cond.is_none();

        let rcay = self.rcay();
        let conclusion = if is_l {
            let sub = Subgyrogroup::new(self.g, h.clone())?;
            components_equal_partition(rcay, &left_cosets(self.g, &sub)?)?
        } else {
            false
        };
        let w = if !conclusion {
            if is_l {
                Some(Witness::Components {
                    blocks: connected_components(rcay).blocks,
                })
            } else {
                Some(Witness::Subgyrogroup {
                    carrier: h.iter().copied().collect(),
                    failure: l_failure,
                })
            }
        } else if !closure_matches {
            Some(Witness::ClosureMismatch {
                closure: closure.into_iter().collect(),
            })
        } else {
            self.asymmetry().or_else(|| cond.map(Witness::Gyration))
        };
        Ok((hypothesis, conclusion, w))
    }
}

/// Evaluates one theorem on `(G, S)`. For [`TheoremId::ComponentsCosets`],
/// `aux` supplies `H`; it defaults to the right closure of `S`, and a supplied
/// `H` that differs from that closure makes the hypothesis false.
pub fn check_theorem(g: &Gyrogroup, s: &GenSet, id: TheoremId, aux: Option<&ElementSet>) -> Result<TheoremReport> {
    Lab::new(g, s)?.check(id, aux)
}

/// Every theorem on `(G, S)` in [`TheoremId::ALL`] order.
pub fn check_all(g: &Gyrogroup, s: &GenSet) -> Result<Vec<TheoremReport>> {
    let lab = Lab::new(g, s)?;
    TheoremId::ALL.into_iter().map(|id| lab.check(id, None)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_set_size: usize,
    pub require_symmetric: bool,
    /// Restrict to these theorems; `None` means all.
    pub theorems: Option<BTreeSet<TheoremId>>,
    /// Draw generators only from this pool; `None` means every non-identity element.
    pub pool: Option<Vec<Element>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_set_size: 3,
            require_symmetric: false,
            theorems: None,
            pool: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConverseFailure {
    pub generators: Vec<Element>,
    pub theorem: TheoremId,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub examined: usize,
    /// Inconsistent reports. Expected empty.
    pub violations: Vec<TheoremReport>,
    pub converse_failures: Vec<ConverseFailure>,
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerates every generating set (identity excluded, empty set included) of
/// size at most `cfg.max_set_size`, ordered by size then lexicographically,
/// and checks the selected theorems on each.
pub fn search_counterexamples(g: &Gyrogroup, cfg: &SearchConfig) -> Result<SearchOutcome> {
    if cfg.max_set_size == 0 {
        return Err(GyroError::InvalidConfig("max_set_size must be at least 1".into()));
    }
    let pool: Vec<Element> = match &cfg.pool {
        Some(p) => {
            let set = GenSet::new(g, p.iter().copied())?;
            set.require_no_identity(g)?;
            set.as_slice().to_vec()
        }
        None => g.elements().filter(|&x| x != g.identity()).collect(),
    };
    let k = cfg.max_set_size.min(pool.len());
    let count: u128 = (0..=k as u128).map(|i| binomial(pool.len() as u128, i)).sum();
    if count > MAX_CANDIDATE_SETS {
        return Err(GyroError::SearchTooLarge {
            count,
            bound: MAX_CANDIDATE_SETS,
        });
    }
    let ids: Vec<TheoremId> = TheoremId::ALL
        .into_iter()
        .filter(|id| cfg.theorems.as_ref().is_none_or(|f| f.contains(id)))
        .collect();

    let sets: Vec<GenSet> = (0..=k)
        .flat_map(|size| pool.iter().copied().combinations(size))
        .map(|c| GenSet::new(g, c))
        .collect::<Result<_>>()?;
    let sets: Vec<GenSet> = sets
        .into_iter()
        .filter(|s| !cfg.require_symmetric || s.iter().all(|x| s.contains(g.neg(x))))
        .collect();

    let per_set: Vec<Vec<TheoremReport>> = sets
        .par_iter()
        .map(|s| {
            let lab = Lab::new(g, s)?;
            ids.iter().map(|&id| lab.check(id, None)).collect()
        })
        .collect::<Result<_>>()?;

    let mut outcome = SearchOutcome {
        examined: sets.len(),
        ..SearchOutcome::default()
    };
    for report in per_set.into_iter().flatten() {
        if report.is_converse_failure() {
            outcome.converse_failures.push(ConverseFailure {
                generators: report.generators.clone(),
                theorem: report.theorem,
            });
        }
        if !report.consistent {
            outcome.violations.push(report);
        }
    }
    Ok(outcome)
}
