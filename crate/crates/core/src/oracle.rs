//! Ground-truth counts by exhaustive depth-first enumeration.
//!
//! Everything is counted as a traversal sequence: a trail and its reversal
//! are different objects, and so are the two directions of a cycle.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::caps::DEFAULT_NODE_BUDGET;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Walk given by its 1-based vertex sequence; length is the number of edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WalkSeq(pub Vec<usize>);

impl WalkSeq {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Traversed edges in order, each as `(min, max)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1])))
    }

    pub fn is_walk_in(&self, g: &Graph) -> bool {
        !self.0.is_empty()
            && self.0.iter().all(|&v| (1..=g.n()).contains(&v))
            && self.0.windows(2).all(|w| g.has_edge(w[0] - 1, w[1] - 1))
    }

    pub fn is_trail(&self) -> bool {
        let mut e: Vec<_> = self.edges().collect();
        e.sort_unstable();
        e.windows(2).all(|w| w[0] != w[1])
    }

    /// No repeated vertex, except that a closed walk of length >= 3 may
    /// return to its start at the very end.
    pub fn is_path(&self) -> bool {
        let v = &self.0;
        let closed = v.len() > 1 && v[0] == v[v.len() - 1];
        let body = if closed {
            if self.len() < 3 {
                return false;
            }
            &v[..v.len() - 1]
        } else {
            &v[..]
        };
        all_distinct(body)
    }

    /// Every vertex after the first is distinct; the first is unconstrained.
    pub fn is_distinct_non_initial(&self) -> bool {
        all_distinct(&self.0[1..])
    }

    pub fn edge_set(&self) -> EdgeSet {
        let mut e: Vec<_> = self.edges().collect();
        e.sort_unstable();
        e.dedup();
        e
    }
}

impl fmt::Display for WalkSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("-"))
    }
}

fn all_distinct(vs: &[usize]) -> bool {
    let mut s = vs.to_vec();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

/// Sorted 1-based edges `(min, max)`.
pub type EdgeSet = Vec<(usize, usize)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WalkClass {
    Walk,
    /// No edge repeated.
    Trail,
    /// No vertex repeated; a closed path (cycle) needs length >= 3.
    Path,
    /// Vertices after the first pairwise distinct, the first unconstrained.
    /// This is the class the literal vertex-number-operator observable counts.
    DistinctNonInitial,
    /// One trail per traversed edge set: the lexicographically first vertex
    /// sequence among trails with that edge set. Its count is the support
    /// size of the annihilation-operator state.
    StartOnceTrailEdgeSet,
}

type Query = (usize, usize, usize, WalkClass);

/// Enumerator bound to one graph, with a per-query node budget and a memo
/// of counts.
pub struct Oracle<'g> {
    graph: &'g Graph,
    budget: u64,
    edge_id: Vec<usize>,
    memo: Mutex<HashMap<Query, BigUint>>,
}

impl<'g> Oracle<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        let n = graph.n();
        let mut edge_id = vec![usize::MAX; n * n];
        for (id, (a, b)) in graph.edges0().iter().copied().enumerate() {
            edge_id[a * n + b] = id;
            edge_id[b * n + a] = id;
        }
        Oracle {
            graph,
            budget: DEFAULT_NODE_BUDGET,
            edge_id,
            memo: Mutex::new(HashMap::new()),
        }
    }

    /// Maximum DFS nodes visited by a single query.
    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    /// All length-`l` walks from `u` to `v` in `class`, lexicographic.
    pub fn enumerate(&self, l: usize, u: usize, v: usize, class: WalkClass) -> Result<Vec<WalkSeq>> {
        let (a, b) = (self.graph.index(u)?, self.graph.index(v)?);
        if class == WalkClass::StartOnceTrailEdgeSet {
            let mut firsts: BTreeMap<EdgeSet, WalkSeq> = BTreeMap::new();
            for w in self.enumerate(l, u, v, WalkClass::Trail)? {
                firsts.entry(w.edge_set()).or_insert(w);
            }
            let mut out: Vec<_> = firsts.into_values().collect();
            out.sort();
            return Ok(out);
        }
        let mut out = Vec::new();
        self.search(l, a, b, class, &mut |seq, _| {
            out.push(WalkSeq(seq.iter().map(|x| x + 1).collect()));
        })?;
        Ok(out)
    }

    /// Size of [`enumerate`](Self::enumerate)'s output, without materialising it.
    pub fn count(&self, l: usize, u: usize, v: usize, class: WalkClass) -> Result<BigUint> {
        let (a, b) = (self.graph.index(u)?, self.graph.index(v)?);
        let key = (l, a, b, class);
        if let Some(c) = self.memo.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let value = if class == WalkClass::StartOnceTrailEdgeSet {
            BigUint::from(self.trail_edge_set_histogram(l, u, v)?.len())
        } else {
            let mut total = 0u64;
            self.search(l, a, b, class, &mut |_, _| total += 1)?;
            BigUint::from(total)
        };
        self.memo.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// Closed trails from `u` using every edge once, counted as sequences
    /// (each circuit contributes one per direction and per starting
    /// occurrence of `u`).
    pub fn count_closed_euler_trails(&self, u: usize) -> Result<BigUint> {
        self.count(self.graph.edge_count(), u, u, WalkClass::Trail)
    }

    /// Hamiltonian cycles through `u`. With `directed`, closed traversals
    /// `u -> ... -> u` are counted, which is twice the undirected count.
    pub fn count_hamiltonian_cycles_through(&self, u: usize, directed: bool) -> Result<BigUint> {
        let n = self.graph.n();
        if n < 3 {
            self.graph.index(u)?;
            return Ok(BigUint::zero());
        }
        let closed = self.count(n, u, u, WalkClass::Path)?;
        Ok(if directed { closed } else { closed / 2u32 })
    }

    /// For each edge set S, the number of trails from `u` to `v` of length
    /// `l` whose traversed edges are exactly S. Zero entries are omitted.
    pub fn trail_edge_set_histogram(&self, l: usize, u: usize, v: usize) -> Result<BTreeMap<EdgeSet, BigUint>> {
        let (a, b) = (self.graph.index(u)?, self.graph.index(v)?);
        let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
        self.search(l, a, b, WalkClass::Trail, &mut |_, used| {
            let key: Vec<usize> = used
                .iter()
                .enumerate()
                .filter_map(|(id, &on)| on.then_some(id))
                .collect();
            *counts.entry(key).or_insert(0) += 1;
        })?;
        let edges = self.graph.edges0();
        Ok(counts
            .into_iter()
            .map(|(ids, c)| {
                let mut set: EdgeSet = ids.iter().map(|&id| (edges[id].0 + 1, edges[id].1 + 1)).collect();
                set.sort_unstable();
                (set, BigUint::from(c))
            })
            .collect())
    }

    fn search(
        &self,
        l: usize,
        start: usize,
        target: usize,
        class: WalkClass,
        emit: &mut dyn FnMut(&[usize], &[bool]),
    ) -> Result<()> {
        let n = self.graph.n();
        let mut s = Search {
            oracle: self,
            l,
            start,
            target,
            class,
            visited_nodes: 0,
            seq: Vec::with_capacity(l + 1),
            used_edges: vec![false; self.graph.edge_count()],
            taken: vec![false; n],
        };
        s.seq.push(start);
        if matches!(class, WalkClass::Path) {
            s.taken[start] = true;
        }
        s.dfs(emit)
    }
}

struct Search<'a, 'g> {
    oracle: &'a Oracle<'g>,
    l: usize,
    start: usize,
    target: usize,
    class: WalkClass,
    visited_nodes: u64,
    seq: Vec<usize>,
    used_edges: Vec<bool>,
    taken: Vec<bool>,
}

impl Search<'_, '_> {
    fn dfs(&mut self, emit: &mut dyn FnMut(&[usize], &[bool])) -> Result<()> {
        self.visited_nodes += 1;
        if self.visited_nodes > self.oracle.budget {
            return Err(Error::BudgetExceeded {
                budget: self.oracle.budget,
            });
        }
        let depth = self.seq.len() - 1;
        let here = *self.seq.last().unwrap();
        if depth == self.l {
            if here == self.target {
                emit(&self.seq, &self.used_edges);
            }
            return Ok(());
        }
        let g = self.oracle.graph;
        let n = g.n();
        let last_step = depth + 1 == self.l;
        for &next in g.neighbors(here) {
            if last_step && next != self.target {
                continue;
            }
            let id = self.oracle.edge_id[here * n + next];
            let mark_vertex = match self.class {
                WalkClass::Walk => false,
                WalkClass::Trail | WalkClass::StartOnceTrailEdgeSet => {
                    if self.used_edges[id] {
                        continue;
                    }
                    false
                }
                WalkClass::Path => {
                    let closing = last_step && next == self.start && self.start == self.target && self.l >= 3;
                    if self.taken[next] && !closing {
                        continue;
                    }
                    !closing
                }
                WalkClass::DistinctNonInitial => {
                    if self.taken[next] {
                        continue;
                    }
                    true
                }
            };
            let mark_edge = matches!(self.class, WalkClass::Trail | WalkClass::StartOnceTrailEdgeSet);
            if mark_edge {
                self.used_edges[id] = true;
            }
            if mark_vertex {
                self.taken[next] = true;
            }
            self.seq.push(next);
            let r = self.dfs(emit);
            self.seq.pop();
            if mark_vertex {
                self.taken[next] = false;
            }
            if mark_edge {
                self.used_edges[id] = false;
            }
            r?;
        }
        Ok(())
    }
}
