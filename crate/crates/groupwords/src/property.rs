//! The w_{m,n}-property: for every size-m subset M and size-n subset N of a
//! group, some x in M and y in N satisfy w(x, y) = 1.
//!
//! On the word graph this is a forbidden-subgraph condition: the property
//! fails exactly when some M has at least n common out-neighbors (a complete
//! bipartite directed configuration from M onto an n-set). The fast search
//! enumerates m-subsets in lexicographic order as a depth-first walk over a
//! shrinking row intersection, pruning prefixes whose intersection is
//! already too small and skipping later siblings whose out-row matches an
//! exhausted earlier sibling. A brute-force oracle provides the independent
//! ground truth at small sizes.

use std::collections::HashMap;
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::bits;
use crate::bounds::{order_bound_holds, BoundReport, BoundsError, GapConstant};
use crate::graph::WordGraph;
use crate::group::{ElementIndex, Group};
use crate::word::Word;

/// Brute-force oracle limits: C(t, m) * C(t, n) pairs are enumerated, so the
/// inputs are kept small.
pub const ORACLE_MAX_VERTICES: usize = 24;
pub const ORACLE_MAX_SUBSET: usize = 3;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PropertyError {
    #[error("invalid property query: {0}")]
    InvalidQuery(String),
    #[error("enumeration infeasible: {0}")]
    InfeasibleEnumeration(String),
}

/// Whether the witness sets M and N may share elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OverlapPolicy {
    AllowOverlap,
    RequireDisjoint,
}

impl OverlapPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            OverlapPolicy::AllowOverlap => "allow_overlap",
            OverlapPolicy::RequireDisjoint => "require_disjoint",
        }
    }
}

impl fmt::Display for OverlapPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Search parameters. Both sizes must be at least 1; m <= n is only needed
/// when feeding results into the order bound, not for the search itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyQuery {
    m: usize,
    n: usize,
    policy: OverlapPolicy,
}

impl PropertyQuery {
    pub fn new(m: usize, n: usize, policy: OverlapPolicy) -> Result<PropertyQuery, PropertyError> {
        if m < 1 || n < 1 {
            return Err(PropertyError::InvalidQuery(format!(
                "m and n must be >= 1, got m={m}, n={n}"
            )));
        }
        Ok(PropertyQuery { m, n, policy })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn policy(&self) -> OverlapPolicy {
        self.policy
    }
}

/// Search outcome. When the property fails, `witness_m` and `witness_n` hold
/// the lexicographically first failing pair of sets: every x in M sends an
/// arc to every y in N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub has_property: bool,
    pub witness_m: Option<Vec<ElementIndex>>,
    pub witness_n: Option<Vec<ElementIndex>>,
    /// Complete candidate sets inspected (m-subsets for the graph search,
    /// (M, N) pairs for the oracle).
    pub subsets_examined: u64,
}

impl PropertyResult {
    fn holds(subsets_examined: u64) -> PropertyResult {
        PropertyResult {
            has_property: true,
            witness_m: None,
            witness_n: None,
            subsets_examined,
        }
    }
}

/// First-occurrence class id of each vertex's out-row; vertices with equal
/// rows share a class.
fn row_classes(graph: &WordGraph) -> Vec<usize> {
    let mut ids: HashMap<&[u64], usize> = HashMap::new();
    (0..graph.vertex_count())
        .map(|v| {
            let next = ids.len();
            *ids.entry(graph.out_neighborhood(v)).or_insert(next)
        })
        .collect()
}

struct Search<'g> {
    graph: &'g WordGraph,
    m: usize,
    n: usize,
    policy: OverlapPolicy,
    classes: Vec<usize>,
    chosen: Vec<usize>,
    scratch: Vec<Vec<u64>>,
    examined: u64,
    witness: Option<(Vec<usize>, Vec<usize>)>,
}

impl Search<'_> {
    /// Intersect the current prefix with row `v` into `scratch[level]` and
    /// return the resulting popcount.
    fn intersect(&mut self, level: usize, v: usize) -> usize {
        let row = self.graph.out_neighborhood(v);
        let (prev, rest) = self.scratch.split_at_mut(level);
        let cur = &mut rest[0];
        if level == 0 {
            cur.copy_from_slice(row);
        } else {
            for (c, (p, r)) in cur.iter_mut().zip(prev[level - 1].iter().zip(row)) {
                *c = p & r;
            }
        }
        bits::popcount(cur)
    }

    /// Returns true when some complete m-subset below this node had an
    /// intersection of size >= n. A later sibling with the same out-row can
    /// only realize subset multisets this subtree already covered, so when
    /// the subtree produced no such candidate the sibling is skipped.
    fn dfs(&mut self, level: usize, start: usize) -> bool {
        let t = self.graph.vertex_count();
        let remaining = self.m - level;
        let mut subtree_candidate = false;
        let mut sibling_outcome: HashMap<usize, bool> = HashMap::new();
        for v in start..t {
            if t - v < remaining {
                break;
            }
            let class = self.classes[v];
            if sibling_outcome.get(&class) == Some(&false) {
                continue;
            }
            let count = self.intersect(level, v);
            let mut candidate_here = false;
            if level + 1 == self.m {
                self.examined += 1;
                if count >= self.n {
                    candidate_here = true;
                    self.chosen.push(v);
                    let witness_n = self.witness_n_if_fails(level, count);
                    if let Some(n_set) = witness_n {
                        self.witness = Some((self.chosen.clone(), n_set));
                        return true;
                    }
                    self.chosen.pop();
                }
            } else if count >= self.n {
                self.chosen.push(v);
                candidate_here = self.dfs(level + 1, v + 1);
                self.chosen.pop();
                if self.witness.is_some() {
                    return true;
                }
            }
            subtree_candidate |= candidate_here;
            sibling_outcome.insert(class, candidate_here);
        }
        subtree_candidate
    }

    /// With `chosen` complete and its intersection in `scratch[level]`,
    /// decide failure under the overlap policy and build the witness N: the
    /// n smallest valid elements.
    fn witness_n_if_fails(&self, level: usize, count: usize) -> Option<Vec<usize>> {
        let inter = &self.scratch[level];
        match self.policy {
            OverlapPolicy::AllowOverlap => Some(bits::set_bits(inter).take(self.n).collect()),
            OverlapPolicy::RequireDisjoint => {
                let overlap = self
                    .chosen
                    .iter()
                    .filter(|&&u| bits::test_bit(inter, u))
                    .count();
                if count - overlap >= self.n {
                    Some(
                        bits::set_bits(inter)
                            .filter(|b| !self.chosen.contains(b))
                            .take(self.n)
                            .collect(),
                    )
                } else {
                    None
                }
            }
        }
    }
}

/// Decide the property by searching the graph for a complete bipartite
/// directed configuration from some m-subset onto n common out-neighbors.
pub fn has_wmn_property(graph: &WordGraph, query: &PropertyQuery) -> PropertyResult {
    let t = graph.vertex_count();
    if query.m > t {
        return PropertyResult::holds(0);
    }
    let stride = graph.out_neighborhood(0).len();
    let mut search = Search {
        graph,
        m: query.m,
        n: query.n,
        policy: query.policy,
        classes: row_classes(graph),
        chosen: Vec::with_capacity(query.m),
        scratch: vec![vec![0u64; stride]; query.m],
        examined: 0,
        witness: None,
    };
    search.dfs(0, 0);
    match search.witness {
        Some((m_set, n_set)) => PropertyResult {
            has_property: false,
            witness_m: Some(m_set),
            witness_n: Some(n_set),
            subsets_examined: search.examined,
        },
        None => PropertyResult::holds(search.examined),
    }
}

/// Visit k-subsets of 0..t in lexicographic order until `f` returns false.
/// Returns false when aborted by `f`.
fn for_each_combination(t: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > t {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return false;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            if idx[i] != i + t - k {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Brute-force ground truth: enumerate every (M, N) pair under the policy
/// and look for one whose arcs are all present. Limited to
/// [`ORACLE_MAX_VERTICES`] vertices and subset sizes of
/// [`ORACLE_MAX_SUBSET`].
pub fn naive_oracle(
    graph: &WordGraph,
    query: &PropertyQuery,
) -> Result<PropertyResult, PropertyError> {
    let t = graph.vertex_count();
    if t > ORACLE_MAX_VERTICES || query.m > ORACLE_MAX_SUBSET || query.n > ORACLE_MAX_SUBSET {
        return Err(PropertyError::InfeasibleEnumeration(format!(
            "oracle accepts t <= {ORACLE_MAX_VERTICES} and m, n <= {ORACLE_MAX_SUBSET}; \
             got t={t}, m={}, n={}",
            query.m, query.n
        )));
    }
    let mut examined = 0u64;
    let mut witness: Option<(Vec<usize>, Vec<usize>)> = None;
    for_each_combination(t, query.m, |m_set| {
        for_each_combination(t, query.n, |n_set| {
            if query.policy == OverlapPolicy::RequireDisjoint
                && n_set.iter().any(|v| m_set.contains(v))
            {
                return true;
            }
            examined += 1;
            let all_arcs = m_set
                .iter()
                .all(|&a| n_set.iter().all(|&b| graph.has_arc(a, b)));
            if all_arcs {
                witness = Some((m_set.to_vec(), n_set.to_vec()));
                false
            } else {
                true
            }
        })
    });
    Ok(match witness {
        Some((m_set, n_set)) => PropertyResult {
            has_property: false,
            witness_m: Some(m_set),
            witness_n: Some(n_set),
            subsets_examined: examined,
        },
        None => PropertyResult::holds(examined),
    })
}

struct FrontierSearch<'g> {
    graph: &'g WordGraph,
    m: usize,
    policy: OverlapPolicy,
    classes: Vec<usize>,
    chosen: Vec<usize>,
    scratch: Vec<Vec<u64>>,
    best: usize,
}

impl FrontierSearch<'_> {
    fn intersect(&mut self, level: usize, v: usize) -> usize {
        let row = self.graph.out_neighborhood(v);
        let (prev, rest) = self.scratch.split_at_mut(level);
        let cur = &mut rest[0];
        if level == 0 {
            cur.copy_from_slice(row);
        } else {
            for (c, (p, r)) in cur.iter_mut().zip(prev[level - 1].iter().zip(row)) {
                *c = p & r;
            }
        }
        bits::popcount(cur)
    }

    fn dfs(&mut self, level: usize, start: usize) {
        let t = self.graph.vertex_count();
        let remaining = self.m - level;
        // Per-class upper bound on leaf intersection sizes reachable through
        // an earlier sibling with the same out-row.
        let mut sibling_bound: HashMap<usize, usize> = HashMap::new();
        for v in start..t {
            if t - v < remaining {
                break;
            }
            let class = self.classes[v];
            if matches!(sibling_bound.get(&class), Some(&bound) if bound <= self.best) {
                continue;
            }
            let count = self.intersect(level, v);
            if count > self.best {
                if level + 1 == self.m {
                    let value = match self.policy {
                        OverlapPolicy::AllowOverlap => count,
                        OverlapPolicy::RequireDisjoint => {
                            let inter = &self.scratch[level];
                            let overlap = self
                                .chosen
                                .iter()
                                .chain(std::iter::once(&v))
                                .filter(|&&u| bits::test_bit(inter, u))
                                .count();
                            count - overlap
                        }
                    };
                    self.best = self.best.max(value);
                } else {
                    self.chosen.push(v);
                    self.dfs(level + 1, v + 1);
                    self.chosen.pop();
                }
            }
            sibling_bound.insert(class, count);
        }
    }
}

/// Largest common out-neighborhood size over all m-subsets (excluding the
/// subset's own members under [`OverlapPolicy::RequireDisjoint`]).
///
/// The property holds for exactly the n strictly above this value and fails
/// for all 1 <= n at or below it. Returns 0 when `m` exceeds the vertex
/// count. Panics when `m == 0`.
pub fn property_frontier(graph: &WordGraph, m: usize, policy: OverlapPolicy) -> usize {
    assert!(m >= 1, "frontier needs m >= 1");
    let t = graph.vertex_count();
    if m > t {
        return 0;
    }
    let stride = graph.out_neighborhood(0).len();
    let mut search = FrontierSearch {
        graph,
        m,
        policy,
        classes: row_classes(graph),
        chosen: Vec::with_capacity(m),
        scratch: vec![vec![0u64; stride]; m],
        best: 0,
    };
    search.dfs(0, 0);
    search.best
}

/// Which branch of the identity-or-bounded dichotomy a sweep row landed in.
#[derive(Clone, Debug, PartialEq)]
pub enum DichotomyBranch {
    /// The word is an identity in the group; no bound is claimed.
    IdentityWord,
    /// The property fails for this (m, n), so the bound does not apply.
    NotApplicable,
    /// The property holds and the word is not an identity: the order bound
    /// must hold.
    Bound(BoundReport),
}

/// One record of a dichotomy sweep; serialization schemas mirror these
/// fields, with `arc_count` appearing as the `eta` column.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub group: String,
    pub order: usize,
    pub word: String,
    pub m: usize,
    pub n: usize,
    pub policy: OverlapPolicy,
    pub property_holds: bool,
    pub frontier: usize,
    pub arc_count: u64,
    pub probability: BigRational,
    pub branch: DichotomyBranch,
}

impl SweepRow {
    pub fn is_violation(&self) -> bool {
        matches!(&self.branch, DichotomyBranch::Bound(report) if !report.holds)
    }
}

/// Sweep one graph over every 1 <= m <= m_max, m <= n <= n_max and both
/// overlap policies, recording the dichotomy branch per row.
pub fn dichotomy_rows(
    graph: &WordGraph,
    gamma: &GapConstant,
    m_max: usize,
    n_max: usize,
) -> Result<Vec<SweepRow>, BoundsError> {
    if m_max < 1 || n_max < 1 {
        return Err(BoundsError::Domain(format!(
            "need m_max >= 1 and n_max >= 1, got m_max={m_max}, n_max={n_max}"
        )));
    }
    let word_is_identity = graph.arc_count() == 0;
    let probability = graph.satisfaction_probability();
    let order = graph.vertex_count();
    let mut rows = Vec::new();
    for m in 1..=m_max {
        let frontiers = [
            (
                OverlapPolicy::AllowOverlap,
                property_frontier(graph, m, OverlapPolicy::AllowOverlap),
            ),
            (
                OverlapPolicy::RequireDisjoint,
                property_frontier(graph, m, OverlapPolicy::RequireDisjoint),
            ),
        ];
        for n in m..=n_max {
            for (policy, frontier) in frontiers {
                let property_holds = n > frontier;
                let branch = if word_is_identity {
                    DichotomyBranch::IdentityWord
                } else if !property_holds {
                    DichotomyBranch::NotApplicable
                } else {
                    DichotomyBranch::Bound(order_bound_holds(order as u64, gamma, m, n)?)
                };
                rows.push(SweepRow {
                    group: graph.group_name().to_string(),
                    order,
                    word: graph.word_source().to_string(),
                    m,
                    n,
                    policy,
                    property_holds,
                    frontier,
                    arc_count: graph.arc_count(),
                    probability: probability.clone(),
                    branch,
                });
            }
        }
    }
    Ok(rows)
}

/// Build the word graph for (group, word) and sweep the dichotomy over the
/// given caps.
pub fn verify_dichotomy(
    group: &Group,
    word: &Word,
    gamma: &GapConstant,
    m_max: usize,
    n_max: usize,
) -> Result<Vec<SweepRow>, BoundsError> {
    dichotomy_rows(&WordGraph::build(group, word), gamma, m_max, n_max)
}
