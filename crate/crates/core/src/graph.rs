//! Simple undirected graphs, edge-slot indexing and walk counting by
//! adjacency-matrix powers.
//!
//! Vertex labels are 1-based at every public boundary; internal indices
//! are 0-based.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Lexicographic numbering of all unordered pairs of distinct vertices:
/// (1,2), (1,3), ..., (1,n), (2,3), ... get slots 0, 1, 2, ...
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeSlotIndex {
    n: usize,
}

impl EdgeSlotIndex {
    pub fn new(n: usize) -> Self {
        EdgeSlotIndex { n }
    }

    /// Number of slots, C(n,2).
    pub fn len(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Slot of the 0-based pair {a, b}, a != b.
    pub fn slot(&self, a: usize, b: usize) -> usize {
        debug_assert!(a != b && a < self.n && b < self.n);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        lo * self.n - lo * (lo + 1) / 2 + (hi - lo - 1)
    }

    /// Inverse of [`slot`](Self::slot), 0-based pair with `lo < hi`.
    pub fn pair(&self, slot: usize) -> (usize, usize) {
        assert!(slot < self.len(), "slot {slot} out of range");
        let mut rest = slot;
        for lo in 0..self.n {
            let row = self.n - lo - 1;
            if rest < row {
                return (lo, lo + 1 + rest);
            }
            rest -= row;
        }
        unreachable!()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// 0-based, `a < b`, sorted.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on vertices `1..=n` from 1-based edge pairs.
    /// Repeated pairs (in either orientation) collapse to one edge.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            set.insert((u.min(v) - 1, u.max(v) - 1));
        }
        Ok(Self::from_sorted_pairs(n, set.into_iter().collect()))
    }

    /// Builds a graph from 0-based pairs that are already validated.
    pub(crate) fn from_sorted_pairs(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adjacency,
        }
    }

    /// Graph whose edges are the set bits of `mask` under [`EdgeSlotIndex`].
    pub fn from_slot_mask(n: usize, mask: u128) -> Self {
        let slots = EdgeSlotIndex::new(n);
        let edges = (0..slots.len())
            .filter(|&s| mask >> s & 1 == 1)
            .map(|s| slots.pair(s))
            .collect();
        Self::from_sorted_pairs(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1))
    }

    pub(crate) fn edges0(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted 0-based neighbours of 0-based vertex `a`.
    pub fn neighbors(&self, a: usize) -> &[usize] {
        &self.adjacency[a]
    }

    pub fn degree(&self, a: usize) -> usize {
        self.adjacency[a].len()
    }

    /// Adjacency test on 0-based vertices.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a != b && self.adjacency[a].binary_search(&b).is_ok()
    }

    pub fn slots(&self) -> EdgeSlotIndex {
        EdgeSlotIndex::new(self.n)
    }

    /// Edge set as a bit mask over all C(n,2) slots. Requires n <= 16.
    pub fn slot_mask(&self) -> u128 {
        assert!(self.n <= 16, "slot mask needs n <= 16");
        let slots = self.slots();
        self.edges
            .iter()
            .fold(0u128, |m, &(a, b)| m | 1u128 << slots.slot(a, b))
    }

    /// Converts a 1-based label to a 0-based index.
    pub fn index(&self, vertex: usize) -> Result<usize> {
        if vertex == 0 || vertex > self.n {
            Err(Error::VertexOutOfRange { vertex, n: self.n })
        } else {
            Ok(vertex - 1)
        }
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(a) = stack.pop() {
            for &b in &self.adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    count += 1;
                    stack.push(b);
                }
            }
        }
        count == self.n
    }

    /// Every vertex with an edge lies in one component and all degrees are even.
    pub fn has_euler_circuit(&self) -> bool {
        if self.adjacency.iter().any(|l| l.len() % 2 == 1) {
            return false;
        }
        let Some(start) = (0..self.n).find(|&a| self.degree(a) > 0) else {
            return true;
        };
        let mut seen = vec![false; self.n];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(a) = stack.pop() {
            for &b in &self.adjacency[a] {
                if !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        (0..self.n).all(|a| seen[a] || self.degree(a) == 0)
    }

    /// Edge-list text that [`parse_edge_list`] reads back to the same graph.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} E={{", self.n)?;
        for (i, (u, v)) in self.edges().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "}}")
    }
}

/// Parses the line-oriented edge-list format.
///
/// Each non-blank line is either `u v` (1-based labels) or a header
/// `n <count>`. `#` starts a comment. Without a header the vertex count is
/// the largest label seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut declared: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(err("header must be `n <count>`".into()));
            }
            if declared.is_some() {
                return Err(err("duplicate `n` header".into()));
            }
            let count = parse_label(tokens[1]).map_err(err)?;
            declared = Some((count, line_no));
            continue;
        }
        if tokens.len() != 2 {
            return Err(err(format!("expected `u v`, found {} tokens", tokens.len())));
        }
        let u = parse_label(tokens[0]).map_err(err)?;
        let v = parse_label(tokens[1]).map_err(err)?;
        if u == v {
            return Err(err(format!("self-loop at vertex {u}")));
        }
        edges.push((u, v, line_no));
    }

    let n = match declared {
        Some((n, _)) => {
            if let Some(&(u, v, line)) = edges.iter().find(|(u, v, _)| (*u).max(*v) > n) {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex {} exceeds declared n = {n}", u.max(v)),
                });
            }
            n
        }
        None => edges.iter().map(|&(u, v, _)| u.max(v)).max().ok_or_else(|| {
            Error::InvalidGraph("no edges and no `n` header".into())
        })?,
    };
    Graph::new(n, edges.into_iter().map(|(u, v, _)| (u, v)))
}

fn parse_label(token: &str) -> std::result::Result<usize, String> {
    match token.parse::<usize>() {
        Ok(0) => Err("vertex labels start at 1".into()),
        Ok(v) => Ok(v),
        Err(_) => Err(format!("not a positive integer: {token:?}")),
    }
}

/// Square matrix of arbitrary-precision counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    n: usize,
    entries: Vec<BigUint>,
}

impl CountMatrix {
    pub fn zeros(n: usize) -> Self {
        CountMatrix {
            n,
            entries: vec![BigUint::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = BigUint::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &BigUint {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigUint) {
        self.entries[row * self.n + col] = value;
    }

    pub fn multiply(&self, other: &CountMatrix) -> CountMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, mut exp: usize) -> CountMatrix {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.multiply(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.multiply(&base);
            }
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Rows of decimal strings.
    pub fn to_rows(&self) -> Vec<Vec<String>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_string()).collect())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::from(self.to_rows())
    }
}

pub fn adjacency_matrix(g: &Graph) -> CountMatrix {
    let mut m = CountMatrix::zeros(g.n());
    for &(a, b) in g.edges0() {
        m.entries[a * g.n() + b] = BigUint::one();
        m.entries[b * g.n() + a] = BigUint::one();
    }
    m
}

/// `A(G)^l`, with `A^0 = I`.
pub fn walk_matrix(g: &Graph, l: usize) -> CountMatrix {
    adjacency_matrix(g).pow(l)
}

/// Number of length-`l` walks from `u` to `v` (1-based).
pub fn walk_count(g: &Graph, l: usize, u: usize, v: usize) -> Result<BigUint> {
    let (a, b) = (g.index(u)?, g.index(v)?);
    Ok(walk_matrix(g, l).get(a, b).clone())
}
