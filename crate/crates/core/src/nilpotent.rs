//! Polynomials in commuting generators with `x^2 = 0`.
//!
//! A monomial is a set of generators, so any product that would repeat a
//! generator vanishes on the spot. Evaluated on the all-occupied basis
//! state, a normally ordered product of number operators is 1 exactly when
//! no slot repeats, which is what this quotient ring tracks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::DEFAULT_MAX_MONOMIALS;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Widest generator index a [`Monomial`] can hold.
pub const MAX_GENERATORS: usize = 128;

/// Square-free monomial as a generator bit set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn generator(index: usize) -> Self {
        assert!(index < MAX_GENERATORS, "generator {index} out of range");
        Monomial(1u128 << index)
    }

    pub fn from_generators(gens: impl IntoIterator<Item = usize>) -> Option<Self> {
        gens.into_iter()
            .try_fold(Monomial::ONE, |m, g| m.mul(Monomial::generator(g)))
    }

    /// Product, or `None` when a generator would appear twice.
    pub fn mul(self, other: Monomial) -> Option<Monomial> {
        (self.0 & other.0 == 0).then_some(Monomial(self.0 | other.0))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, index: usize) -> bool {
        index < MAX_GENERATORS && self.0 >> index & 1 == 1
    }

    pub fn generators(self) -> impl Iterator<Item = usize> {
        (0..MAX_GENERATORS).filter(move |&i| self.0 >> i & 1 == 1)
    }
}

/// Sparse polynomial with positive integer coefficients, iterated in
/// ascending monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigUint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub generators: Vec<usize>,
    pub coeff: String,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::ONE, BigUint::one())
    }

    pub fn generator(index: usize) -> Self {
        Self::monomial(Monomial::generator(index), BigUint::one())
    }

    pub fn monomial(m: Monomial, coeff: BigUint) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, &BigUint)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, m: Monomial) -> BigUint {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Value at every generator = 1.
    pub fn coefficient_sum(&self) -> BigUint {
        self.terms.values().sum()
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        for (m, c) in &other.terms {
            *self.terms.entry(*m).or_default() += c;
        }
    }

    /// Adds `a * b` into `self`.
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some(m) = ma.mul(*mb) {
                    *self.terms.entry(m).or_default() += ca * cb;
                }
            }
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        out.add_product(self, other);
        out
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(m, c)| TermJson {
                generators: m.generators().collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(terms: &[TermJson]) -> Result<Self> {
        let mut p = Polynomial::zero();
        for t in terms {
            let m = Monomial::from_generators(t.generators.iter().copied())
                .ok_or_else(|| Error::InvalidArgument("repeated generator in term".into()))?;
            let c: BigUint = t
                .coeff
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad coefficient {:?}", t.coeff)))?;
            p.add_assign(&Polynomial::monomial(m, c));
        }
        Ok(p)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let gens: Vec<String> = m.generators().map(|g| format!("x{g}")).collect();
            match (c.is_one(), gens.is_empty()) {
                (_, true) => write!(f, "{c}")?,
                (true, false) => write!(f, "{}", gens.join("*"))?,
                (false, false) => write!(f, "{c}*{}", gens.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zeros(n: usize) -> Self {
        PolyMatrix {
            n,
            entries: vec![Polynomial::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = Polynomial::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: Polynomial) {
        self.entries[row * self.n + col] = p;
    }

    pub fn live_monomials(&self) -> usize {
        self.entries.iter().map(Polynomial::len).sum()
    }

    /// Matrix product over the nilpotent ring.
    pub fn multiply(&self, other: &PolyMatrix, max_monomials: usize) -> Result<PolyMatrix> {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        let mut live = 0usize;
        for i in 0..n {
            for j in 0..n {
                let cell = &mut out.entries[i * n + j];
                for k in 0..n {
                    let (a, b) = (&self.entries[i * n + k], &other.entries[k * n + j]);
                    if !a.is_zero() && !b.is_zero() {
                        cell.add_product(a, b);
                    }
                }
                live += cell.len();
                if live > max_monomials {
                    return Err(Error::MonomialCap { cap: max_monomials });
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    fn row_times(row: &[Polynomial], m: &PolyMatrix, max_monomials: usize) -> Result<Vec<Polynomial>> {
        let n = m.n;
        let mut out = vec![Polynomial::zero(); n];
        let mut live = 0usize;
        for (j, cell) in out.iter_mut().enumerate() {
            for (k, a) in row.iter().enumerate() {
                let b = &m.entries[k * n + j];
                if !a.is_zero() && !b.is_zero() {
                    cell.add_product(a, b);
                }
            }
            live += cell.len();
            if live > max_monomials {
                return Err(Error::MonomialCap { cap: max_monomials });
            }
        }
        Ok(out)
    }

    /// Sums of coefficients, entrywise.
    pub fn coefficient_sums(&self) -> crate::graph::CountMatrix {
        let mut rows = crate::graph::CountMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                rows.set(i, j, self.get(i, j).coefficient_sum());
            }
        }
        rows
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<Vec<TermJson>>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j).to_json()).collect())
            .collect();
        serde_json::to_value(rows).expect("terms serialise")
    }
}

/// `m^l` with `x^2 = 0` applied at every product; `m^0` is the identity.
pub fn matrix_power_nilpotent(m: &PolyMatrix, l: usize, max_monomials: usize) -> Result<PolyMatrix> {
    let mut acc = PolyMatrix::identity(m.n);
    for _ in 0..l {
        acc = m.multiply(&acc, max_monomials)?;
    }
    Ok(acc)
}

fn check_generators(needed: usize) -> Result<()> {
    if needed > MAX_GENERATORS {
        Err(Error::Capacity {
            required: needed,
            cap: MAX_GENERATORS,
        })
    } else {
        Ok(())
    }
}

/// Formal adjacency matrix: entry `(a, b)` is the generator of edge slot
/// `{a, b}` when that edge exists. Both orientations share one generator.
pub fn formal_adjacency_edges(g: &Graph) -> Result<PolyMatrix> {
    let slots = g.slots();
    check_generators(slots.len())?;
    let mut m = PolyMatrix::zeros(g.n());
    for (a, b) in g.edges0().iter().copied() {
        let x = Polynomial::generator(slots.slot(a, b));
        m.set(a, b, x.clone());
        m.set(b, a, x);
    }
    Ok(m)
}

/// How the start vertex enters the vertex-number observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexVariant {
    /// Exactly the observable as defined: only destination vertices carry
    /// a generator, so the start vertex may be revisited once.
    Literal,
    /// Not part of the original construction: the start vertex's generator
    /// is multiplied into every term, which turns the count into a path count.
    StartGuarded,
}

/// Vertex observable matrix: entry `(a, b)` is the generator of vertex `b`
/// (the step's destination) when `{a, b}` is an edge. Generator `i` is
/// 0-based vertex `i`.
pub fn vertex_observable_matrix(g: &Graph) -> Result<PolyMatrix> {
    check_generators(g.n())?;
    let mut m = PolyMatrix::zeros(g.n());
    for (a, b) in g.edges0().iter().copied() {
        m.set(a, b, Polynomial::generator(b));
        m.set(b, a, Polynomial::generator(a));
    }
    Ok(m)
}

/// Symbolic engine: counts read off nilpotent matrix powers.
#[derive(Debug, Clone, Copy)]
pub struct Symbolic {
    pub max_monomials: usize,
}

impl Default for Symbolic {
    fn default() -> Self {
        Symbolic {
            max_monomials: DEFAULT_MAX_MONOMIALS,
        }
    }
}

impl Symbolic {
    pub fn new(max_monomials: usize) -> Self {
        Symbolic { max_monomials }
    }

    /// Row `start` of `m^l`, seeded with `seed` instead of 1.
    fn row_power(&self, m: &PolyMatrix, l: usize, start: usize, seed: Polynomial) -> Result<Vec<Polynomial>> {
        let mut row = vec![Polynomial::zero(); m.n];
        row[start] = seed;
        for _ in 0..l {
            row = PolyMatrix::row_times(&row, m, self.max_monomials)?;
        }
        Ok(row)
    }

    /// Entry `(u, v)` of the nilpotent power of the formal adjacency matrix.
    pub fn trail_polynomial(&self, g: &Graph, l: usize, u: usize, v: usize) -> Result<Polynomial> {
        let (a, b) = (g.index(u)?, g.index(v)?);
        let m = formal_adjacency_edges(g)?;
        let mut row = self.row_power(&m, l, a, Polynomial::one())?;
        Ok(std::mem::take(&mut row[b]))
    }

    /// Trail count from `u` to `v`: coefficient sum of the reduced power entry.
    pub fn trail_count(&self, g: &Graph, l: usize, u: usize, v: usize) -> Result<BigUint> {
        Ok(self.trail_polynomial(g, l, u, v)?.coefficient_sum())
    }

    /// Trail counts for all `(u, v)` at once.
    pub fn trail_count_matrix(&self, g: &Graph, l: usize) -> Result<crate::graph::CountMatrix> {
        let m = formal_adjacency_edges(g)?;
        Ok(matrix_power_nilpotent(&m, l, self.max_monomials)?.coefficient_sums())
    }

    /// Trails of length |E| from `u` to `v`; closed Eulerian trails when `u == v`.
    pub fn euler_trail_count(&self, g: &Graph, u: usize, v: usize) -> Result<BigUint> {
        self.trail_count(g, g.edge_count(), u, v)
    }

    pub fn path_polynomial(&self, g: &Graph, l: usize, u: usize, v: usize, variant: VertexVariant) -> Result<Polynomial> {
        let (a, b) = (g.index(u)?, g.index(v)?);
        let m = vertex_observable_matrix(g)?;
        let seed = match variant {
            VertexVariant::Literal => Polynomial::one(),
            VertexVariant::StartGuarded => Polynomial::generator(a),
        };
        let mut row = self.row_power(&m, l, a, seed)?;
        Ok(std::mem::take(&mut row[b]))
    }

    /// Coefficient sum of the vertex-observable power entry `(u, v)`.
    pub fn path_count(&self, g: &Graph, l: usize, u: usize, v: usize, variant: VertexVariant) -> Result<BigUint> {
        Ok(self.path_polynomial(g, l, u, v, variant)?.coefficient_sum())
    }

    /// Literal vertex-observable counts for all `(u, v)`.
    pub fn path_count_matrix(&self, g: &Graph, l: usize) -> Result<crate::graph::CountMatrix> {
        let m = vertex_observable_matrix(g)?;
        Ok(matrix_power_nilpotent(&m, l, self.max_monomials)?.coefficient_sums())
    }

    /// Closed literal count at `(u, u)`: directed cycles of length `l >= 3` through `u`.
    pub fn cycle_count(&self, g: &Graph, l: usize, u: usize) -> Result<BigUint> {
        if l < 3 {
            return Err(Error::InvalidArgument(format!("cycle length must be >= 3, got {l}")));
        }
        self.path_count(g, l, u, u, VertexVariant::Literal)
    }
}

/// Monomial with exponents, for the unreduced formal adjacency powers.
pub type FormalMonomial = Vec<(usize, u32)>;

/// Ordinary commutative polynomial (no nilpotency), used to display walk
/// expansions before reduction.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FormalPolynomial {
    pub terms: BTreeMap<FormalMonomial, BigUint>,
}

impl FormalPolynomial {
    fn mul_generator(&self, generator: usize) -> FormalPolynomial {
        let mut out = FormalPolynomial::default();
        for (m, c) in &self.terms {
            let mut m = m.clone();
            match m.binary_search_by_key(&generator, |&(g, _)| g) {
                Ok(i) => m[i].1 += 1,
                Err(i) => m.insert(i, (generator, 1)),
            }
            *out.terms.entry(m).or_default() += c;
        }
        out
    }

    fn add_assign(&mut self, other: &FormalPolynomial) {
        for (m, c) in &other.terms {
            *self.terms.entry(m.clone()).or_default() += c;
        }
    }

    pub fn coefficient_sum(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Image in the nilpotent ring: every monomial with an exponent above 1 dies.
    pub fn reduce(&self) -> Polynomial {
        let mut p = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.iter().all(|&(_, e)| e == 1) {
                let mono = Monomial::from_generators(m.iter().map(|&(g, _)| g)).expect("square-free");
                p.add_assign(&Polynomial::monomial(mono, c.clone()));
            }
        }
        p
    }
}

/// Entry `(u, v)` of the unreduced power of the formal adjacency matrix;
/// its coefficient sum is the walk count.
pub fn formal_walk_polynomial(g: &Graph, l: usize, u: usize, v: usize) -> Result<FormalPolynomial> {
    let (a, b) = (g.index(u)?, g.index(v)?);
    let slots = g.slots();
    let mut row = vec![FormalPolynomial::default(); g.n()];
    row[a].terms.insert(Vec::new(), BigUint::one());
    for _ in 0..l {
        let mut next = vec![FormalPolynomial::default(); g.n()];
        for (k, p) in row.iter().enumerate() {
            if p.terms.is_empty() {
                continue;
            }
            for &j in g.neighbors(k) {
                next[j].add_assign(&p.mul_generator(slots.slot(k, j)));
            }
        }
        row = next;
    }
    Ok(std::mem::take(&mut row[b]))
}
