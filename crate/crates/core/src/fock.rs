//! Literal evaluation of the ladder-operator observables on qubit registers.
//!
//! Basis index bit `b` is the occupation of slot `b`. Every operator used
//! here sends a basis state to a basis state or to zero with weight +1, so
//! amplitudes stay exact integers. States keep only their nonzero
//! amplitudes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::{Caps, DEFAULT_MAX_QUBITS, DEFAULT_NODE_BUDGET};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{Oracle, WalkClass, WalkSeq};

/// Basis indices are `u64`.
pub const MAX_INDEX_BITS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegisterKind {
    /// One qubit per unordered vertex pair.
    EdgeSpace,
    /// One qubit per edge of the graph only.
    EdgeSubspace,
    /// One qubit per vertex.
    VertexSpace,
}

/// Slot layout of a qubit register built for one graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    kind: RegisterKind,
    n: usize,
    width: usize,
    /// `n * n` table of edge slots for the edge kinds.
    edge_slot: Vec<Option<usize>>,
    /// Slot -> 0-based pair, for the edge kinds.
    slot_pair: Vec<(usize, usize)>,
}

impl Register {
    fn check(required: usize, cap: usize) -> Result<()> {
        let cap = cap.min(MAX_INDEX_BITS);
        if required > cap {
            Err(Error::Capacity { required, cap })
        } else {
            Ok(())
        }
    }

    /// All C(n,2) pairs, lexicographic.
    pub fn edge_space(g: &Graph, cap: usize) -> Result<Self> {
        let n = g.n();
        let slots = g.slots();
        Self::check(slots.len(), cap)?;
        let mut edge_slot = vec![None; n * n];
        let slot_pair: Vec<_> = (0..slots.len()).map(|s| slots.pair(s)).collect();
        for (s, &(a, b)) in slot_pair.iter().enumerate() {
            edge_slot[a * n + b] = Some(s);
            edge_slot[b * n + a] = Some(s);
        }
        Ok(Register {
            kind: RegisterKind::EdgeSpace,
            n,
            width: slots.len(),
            edge_slot,
            slot_pair,
        })
    }

    /// Only the edges of `g`, in lexicographic order. Non-edges have no slot.
    pub fn edge_subspace(g: &Graph, cap: usize) -> Result<Self> {
        let n = g.n();
        Self::check(g.edge_count(), cap)?;
        let mut edge_slot = vec![None; n * n];
        let slot_pair = g.edges0().to_vec();
        for (s, &(a, b)) in slot_pair.iter().enumerate() {
            edge_slot[a * n + b] = Some(s);
            edge_slot[b * n + a] = Some(s);
        }
        Ok(Register {
            kind: RegisterKind::EdgeSubspace,
            n,
            width: slot_pair.len(),
            edge_slot,
            slot_pair,
        })
    }

    pub fn vertex_space(g: &Graph, cap: usize) -> Result<Self> {
        Self::check(g.n(), cap)?;
        Ok(Register {
            kind: RegisterKind::VertexSpace,
            n: g.n(),
            width: g.n(),
            edge_slot: Vec::new(),
            slot_pair: Vec::new(),
        })
    }

    pub fn kind(&self) -> RegisterKind {
        self.kind
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Slot of the 0-based pair `{a, b}`; `None` for vertex registers and
    /// for non-edges of an edge subspace.
    pub fn edge_slot(&self, a: usize, b: usize) -> Option<usize> {
        if self.kind == RegisterKind::VertexSpace || a == b {
            return None;
        }
        self.edge_slot[a * self.n + b]
    }

    /// Human-readable slot name with 1-based labels.
    pub fn slot_name(&self, slot: usize) -> String {
        match self.kind {
            RegisterKind::VertexSpace => format!("{}", slot + 1),
            _ => {
                let (a, b) = self.slot_pair[slot];
                format!("({},{})", a + 1, b + 1)
            }
        }
    }

    /// Basis index with every slot occupied.
    pub fn all_ones_index(&self) -> u64 {
        if self.width == 0 {
            0
        } else {
            u64::MAX >> (64 - self.width)
        }
    }
}

/// Sparse state over a register of `width` qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateVector {
    kind: RegisterKind,
    width: usize,
    amplitudes: BTreeMap<u64, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmplitudeJson {
    pub index: u64,
    pub amplitude: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateJson {
    pub width: usize,
    pub kind: RegisterKind,
    pub nonzero: Vec<AmplitudeJson>,
}

impl StateVector {
    pub fn zero(register: &Register) -> Self {
        StateVector {
            kind: register.kind,
            width: register.width,
            amplitudes: BTreeMap::new(),
        }
    }

    pub fn basis(register: &Register, index: u64) -> Self {
        let mut s = Self::zero(register);
        s.add(index, &BigInt::one());
        s
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn kind(&self) -> RegisterKind {
        self.kind
    }

    pub fn amplitude(&self, index: u64) -> BigInt {
        self.amplitudes.get(&index).cloned().unwrap_or_default()
    }

    /// Adds `amount` to the amplitude of basis state `index`.
    pub fn add(&mut self, index: u64, amount: &BigInt) {
        debug_assert!(self.width >= 64 || index >> self.width == 0);
        let entry = self.amplitudes.entry(index).or_default();
        *entry += amount;
        if entry.is_zero() {
            self.amplitudes.remove(&index);
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.amplitudes.iter().map(|(i, a)| (*i, a))
    }

    pub fn is_zero(&self) -> bool {
        self.amplitudes.is_empty()
    }

    /// `<self|other>`; amplitudes are real.
    pub fn inner(&self, other: &StateVector) -> BigInt {
        self.amplitudes
            .iter()
            .filter_map(|(i, a)| other.amplitudes.get(i).map(|b| a * b))
            .sum()
    }

    pub fn norm_squared(&self) -> BigUint {
        self.amplitudes
            .values()
            .map(|a| a.magnitude() * a.magnitude())
            .sum()
    }

    pub fn sum(&self, other: &StateVector) -> StateVector {
        let mut out = self.clone();
        for (i, a) in &other.amplitudes {
            out.add(*i, a);
        }
        out
    }

    /// Occupation string of basis state `index`, slot 0 first.
    pub fn bitstring(width: usize, index: u64) -> String {
        (0..width)
            .map(|b| if index >> b & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn to_json(&self) -> StateJson {
        StateJson {
            width: self.width,
            kind: self.kind,
            nonzero: self
                .amplitudes
                .iter()
                .map(|(i, a)| AmplitudeJson {
                    index: *i,
                    amplitude: a.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LadderKind {
    Annihilate,
    Create,
    Number,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LadderOp {
    pub kind: LadderKind,
    pub slot: usize,
}

impl LadderOp {
    pub fn annihilate(slot: usize) -> Self {
        LadderOp { kind: LadderKind::Annihilate, slot }
    }

    pub fn create(slot: usize) -> Self {
        LadderOp { kind: LadderKind::Create, slot }
    }

    pub fn number(slot: usize) -> Self {
        LadderOp { kind: LadderKind::Number, slot }
    }

    /// Image of a basis state: `a|1> = |0>`, `a|0> = 0`, `a†|0> = |1>`,
    /// `a†|1> = 0`, `N|k> = k|k>`.
    pub fn act_on_basis(self, index: u64) -> Option<u64> {
        let bit = 1u64 << self.slot;
        let occupied = index & bit != 0;
        match (self.kind, occupied) {
            (LadderKind::Annihilate, true) => Some(index ^ bit),
            (LadderKind::Create, false) => Some(index | bit),
            (LadderKind::Number, true) => Some(index),
            _ => None,
        }
    }
}

impl fmt::Display for LadderOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.kind {
            LadderKind::Annihilate => "a",
            LadderKind::Create => "a+",
            LadderKind::Number => "N",
        };
        write!(f, "{sym}[{}]", self.slot)
    }
}

pub fn apply_ladder(op: LadderOp, state: &StateVector) -> Result<StateVector> {
    if op.slot >= state.width {
        return Err(Error::SlotOutOfRange {
            slot: op.slot,
            width: state.width,
        });
    }
    let mut out = StateVector {
        kind: state.kind,
        width: state.width,
        amplitudes: BTreeMap::new(),
    };
    for (i, a) in &state.amplitudes {
        if let Some(j) = op.act_on_basis(*i) {
            out.add(j, a);
        }
    }
    Ok(out)
}

/// Operator product, written left to right; it acts on kets right to left.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct OperatorTerm {
    pub ops: Vec<LadderOp>,
}

impl OperatorTerm {
    pub fn new(ops: Vec<LadderOp>) -> Self {
        OperatorTerm { ops }
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        self.ops
            .iter()
            .rev()
            .try_fold(state.clone(), |s, op| apply_ladder(*op, &s))
    }

    pub fn act_on_basis(&self, index: u64) -> Option<u64> {
        self.ops
            .iter()
            .rev()
            .try_fold(index, |i, op| op.act_on_basis(i))
    }

    /// Normal order of a product of number operators: every `N_s = a†_s a_s`
    /// is split and all creators are moved left of all annihilators. Slots
    /// on distinct qubits commute, so no correction terms arise.
    pub fn normal_ordered(&self) -> Result<OperatorTerm> {
        if let Some(op) = self.ops.iter().find(|op| op.kind != LadderKind::Number) {
            return Err(Error::InvalidArgument(format!(
                "normal ordering is defined here for number-operator products only, found {op}"
            )));
        }
        let creators = self.ops.iter().map(|op| LadderOp::create(op.slot));
        let annihilators = self.ops.iter().map(|op| LadderOp::annihilate(op.slot));
        Ok(OperatorTerm::new(creators.chain(annihilators).collect()))
    }

    /// Hermitian conjugate: reversed order, `a <-> a†`.
    pub fn adjoint(&self) -> OperatorTerm {
        OperatorTerm::new(
            self.ops
                .iter()
                .rev()
                .map(|op| LadderOp {
                    kind: match op.kind {
                        LadderKind::Annihilate => LadderKind::Create,
                        LadderKind::Create => LadderKind::Annihilate,
                        LadderKind::Number => LadderKind::Number,
                    },
                    slot: op.slot,
                })
                .collect(),
        )
    }
}

impl fmt::Display for OperatorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ops.iter().map(|op| op.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Which operator matrix a walk is expanded against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatrixKind {
    /// Number operators on traversed edge slots.
    NEdge,
    /// Number operators on each step's destination vertex.
    MVertex,
    /// Annihilators on traversed edge slots.
    DEdge,
    /// Annihilators on each step's destination vertex.
    FVertex,
}

impl MatrixKind {
    fn on_vertices(self) -> bool {
        matches!(self, MatrixKind::MVertex | MatrixKind::FVertex)
    }

    fn ladder(self) -> LadderKind {
        match self {
            MatrixKind::NEdge | MatrixKind::MVertex => LadderKind::Number,
            MatrixKind::DEdge | MatrixKind::FVertex => LadderKind::Annihilate,
        }
    }
}

/// Choice of edge register for the edge observables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRegister {
    /// One qubit per vertex pair.
    #[default]
    AllPairs,
    /// One qubit per edge; operator entries on non-edges are zero from the start.
    EdgesOnly,
}

/// Evaluation engine over explicit qubit registers.
#[derive(Debug, Clone, Copy)]
pub struct Fock {
    pub max_qubits: usize,
    pub node_budget: u64,
    pub edge_register: EdgeRegister,
}

impl Default for Fock {
    fn default() -> Self {
        Fock {
            max_qubits: DEFAULT_MAX_QUBITS,
            node_budget: DEFAULT_NODE_BUDGET,
            edge_register: EdgeRegister::AllPairs,
        }
    }
}

/// What to do with the surviving basis state at the end of a term.
enum Finish<'a> {
    /// Accumulate the image into a state.
    Collect(&'a mut StateVector),
    /// Apply the creators of the normal-ordered term, count overlap with the input.
    NormalOrdered { input: u64, total: &'a mut u64 },
}

impl Fock {
    pub fn from_caps(caps: &Caps) -> Self {
        Fock {
            max_qubits: caps.max_qubits,
            node_budget: caps.node_budget,
            edge_register: EdgeRegister::AllPairs,
        }
    }

    pub fn with_edge_register(mut self, edge_register: EdgeRegister) -> Self {
        self.edge_register = edge_register;
        self
    }

    pub fn edge_register_for(&self, g: &Graph) -> Result<Register> {
        match self.edge_register {
            EdgeRegister::AllPairs => Register::edge_space(g, self.max_qubits),
            EdgeRegister::EdgesOnly => Register::edge_subspace(g, self.max_qubits),
        }
    }

    pub fn vertex_register_for(&self, g: &Graph) -> Result<Register> {
        Register::vertex_space(g, self.max_qubits)
    }

    fn register_for(&self, g: &Graph, kind: MatrixKind) -> Result<Register> {
        if kind.on_vertices() {
            self.vertex_register_for(g)
        } else {
            self.edge_register_for(g)
        }
    }

    /// `|psi_G>`: the basis state marking the edges of `g`.
    pub fn graph_state(&self, g: &Graph) -> Result<StateVector> {
        let reg = self.edge_register_for(g)?;
        let index = graph_index(g, &reg);
        Ok(StateVector::basis(&reg, index))
    }

    /// `|1...1>` on the vertex register.
    pub fn all_ones(&self, g: &Graph) -> Result<StateVector> {
        let reg = self.vertex_register_for(g)?;
        Ok(StateVector::basis(&reg, reg.all_ones_index()))
    }

    /// `<psi_G| N_{u,v} |psi_G>`; zero on the diagonal and, for an edge
    /// subspace, on non-edges.
    pub fn number_expectation(&self, g: &Graph, u: usize, v: usize) -> Result<BigInt> {
        let (a, b) = (g.index(u)?, g.index(v)?);
        let reg = self.edge_register_for(g)?;
        let psi = StateVector::basis(&reg, graph_index(g, &reg));
        match reg.edge_slot(a, b) {
            Some(s) => Ok(psi.inner(&apply_ladder(LadderOp::number(s), &psi)?)),
            None => Ok(BigInt::zero()),
        }
    }

    /// One `(walk, operator product)` per length-`l` walk from `u` to `v`:
    /// the terms of entry `(u, v)` of the `l`-th power of the operator matrix.
    pub fn expand_walk_terms(
        &self,
        g: &Graph,
        l: usize,
        u: usize,
        v: usize,
        kind: MatrixKind,
    ) -> Result<Vec<(WalkSeq, OperatorTerm)>> {
        let reg = self.register_for(g, kind)?;
        let walks = Oracle::new(g)
            .with_budget(self.node_budget)
            .enumerate(l, u, v, WalkClass::Walk)?;
        Ok(walks
            .into_iter()
            .map(|w| {
                let ops = w
                    .vertices()
                    .windows(2)
                    .map(|step| {
                        let (a, b) = (step[0] - 1, step[1] - 1);
                        let slot = if kind.on_vertices() {
                            b
                        } else {
                            reg.edge_slot(a, b).expect("walk edges have slots")
                        };
                        LadderOp { kind: kind.ladder(), slot }
                    })
                    .collect();
                (w, OperatorTerm::new(ops))
            })
            .collect())
    }

    /// `<psi| :X^l_{u,v}: |psi>` for `X = N` on `|psi_G>` or `X = M` on `|1...1>`.
    pub fn normal_ordered_expectation(&self, g: &Graph, l: usize, u: usize, v: usize, kind: MatrixKind) -> Result<BigUint> {
        self.normal_ordered(g, l, u, v, kind, false)
    }

    /// `<1...1| :N_u M^l_{u,v}: |1...1>`, the start-guarded vertex observable.
    pub fn guarded_path_expectation(&self, g: &Graph, l: usize, u: usize, v: usize) -> Result<BigUint> {
        self.normal_ordered(g, l, u, v, MatrixKind::MVertex, true)
    }

    fn normal_ordered(&self, g: &Graph, l: usize, u: usize, v: usize, kind: MatrixKind, guard: bool) -> Result<BigUint> {
        if !matches!(kind, MatrixKind::NEdge | MatrixKind::MVertex) {
            return Err(Error::InvalidArgument(format!(
                "{kind:?} is not a number-operator matrix"
            )));
        }
        let (a, b) = (g.index(u)?, g.index(v)?);
        let reg = self.register_for(g, kind)?;
        let input = match kind {
            MatrixKind::NEdge => graph_index(g, &reg),
            _ => reg.all_ones_index(),
        };
        let mut total = 0u64;
        let guard_slot = guard.then_some(a);
        self.walk_back(
            g,
            &reg,
            l,
            a,
            b,
            kind,
            LadderKind::Annihilate,
            input,
            guard_slot,
            Finish::NormalOrdered {
                input,
                total: &mut total,
            },
        )?;
        Ok(BigUint::from(total))
    }

    /// `<psi_G| N^l_{u,v} |psi_G>` without normal ordering: every walk
    /// contributes 1, so this is the walk count.
    pub fn plain_expectation(&self, g: &Graph, l: usize, u: usize, v: usize) -> Result<BigUint> {
        let (a, b) = (g.index(u)?, g.index(v)?);
        let reg = self.edge_register_for(g)?;
        let input = graph_index(g, &reg);
        let mut out = StateVector::zero(&reg);
        self.walk_back(g, &reg, l, a, b, MatrixKind::NEdge, LadderKind::Number, input, None, Finish::Collect(&mut out))?;
        let psi = StateVector::basis(&reg, input);
        Ok(psi.inner(&out).magnitude().clone())
    }

    /// `D^l_{u,v} |psi_G>` with amplitudes accumulated per basis state.
    pub fn d_matrix_state(&self, g: &Graph, l: usize, u: usize, v: usize) -> Result<StateVector> {
        let (a, b) = (g.index(u)?, g.index(v)?);
        let reg = self.edge_register_for(g)?;
        let input = graph_index(g, &reg);
        let mut out = StateVector::zero(&reg);
        self.walk_back(g, &reg, l, a, b, MatrixKind::DEdge, LadderKind::Annihilate, input, None, Finish::Collect(&mut out))?;
        Ok(out)
    }

    /// `<psi_G| (D^l_{u,v})† D^l_{u,v} |psi_G>`, the squared norm of
    /// [`d_matrix_state`](Self::d_matrix_state).
    pub fn d_matrix_quadratic_form(&self, g: &Graph, l: usize, u: usize, v: usize) -> Result<BigUint> {
        Ok(self.d_matrix_state(g, l, u, v)?.norm_squared())
    }

    /// `F^l_{u,u} |1...1>`.
    pub fn f_matrix_state(&self, g: &Graph, l: usize, u: usize) -> Result<StateVector> {
        let a = g.index(u)?;
        let reg = self.vertex_register_for(g)?;
        let input = reg.all_ones_index();
        let mut out = StateVector::zero(&reg);
        self.walk_back(g, &reg, l, a, a, MatrixKind::FVertex, LadderKind::Annihilate, input, None, Finish::Collect(&mut out))?;
        Ok(out)
    }

    /// `<0...0| F^l_{u,u} |1...1>`.
    pub fn f_matrix_amplitude(&self, g: &Graph, l: usize, u: usize) -> Result<BigUint> {
        let amp = self.f_matrix_state(g, l, u)?.amplitude(0);
        debug_assert!(amp.sign() != Sign::Minus);
        Ok(amp.magnitude().clone())
    }

    /// Nonzero `<0...0| F^n_{1,1} |1...1>`.
    pub fn is_hamiltonian(&self, g: &Graph) -> Result<bool> {
        if g.n() < 3 {
            return Err(Error::InvalidArgument("Hamiltonicity needs n >= 3".into()));
        }
        Ok(!self.f_matrix_amplitude(g, g.n(), 1)?.is_zero())
    }

    /// Walks the length-`l` walks from `start` to `end` backwards from
    /// `end`, so each step applies the rightmost remaining factor of the
    /// product `X_{start,v1} X_{v1,v2} ... X_{v(l-1),end}` to the running
    /// basis state. A factor that annihilates the state prunes the branch.
    #[allow(clippy::too_many_arguments)]
    fn walk_back(
        &self,
        g: &Graph,
        reg: &Register,
        l: usize,
        start: usize,
        end: usize,
        kind: MatrixKind,
        ladder: LadderKind,
        input: u64,
        guard: Option<usize>,
        mut finish: Finish<'_>,
    ) -> Result<()> {
        let mut walker = Walker {
            g,
            reg,
            start,
            kind,
            ladder,
            guard,
            budget: self.node_budget,
            visited: 0,
            slots: Vec::with_capacity(l + 1),
        };
        walker.step(end, l, input, &mut finish)
    }
}

fn graph_index(g: &Graph, reg: &Register) -> u64 {
    g.edges0().iter().fold(0u64, |idx, &(a, b)| {
        idx | 1u64 << reg.edge_slot(a, b).expect("edges have slots")
    })
}

struct Walker<'a> {
    g: &'a Graph,
    reg: &'a Register,
    start: usize,
    kind: MatrixKind,
    ladder: LadderKind,
    guard: Option<usize>,
    budget: u64,
    visited: u64,
    /// Slots touched so far, needed to re-create for normal-ordered terms.
    slots: Vec<usize>,
}

impl Walker<'_> {
    fn step(&mut self, here: usize, remaining: usize, index: u64, finish: &mut Finish<'_>) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if remaining == 0 {
            if here == self.start {
                self.complete(index, finish);
            }
            return Ok(());
        }
        for &prev in self.g.neighbors(here) {
            if remaining == 1 && prev != self.start {
                continue;
            }
            let slot = if self.kind.on_vertices() {
                here
            } else {
                match self.reg.edge_slot(prev, here) {
                    Some(s) => s,
                    None => continue,
                }
            };
            let op = LadderOp { kind: self.ladder, slot };
            if let Some(next) = op.act_on_basis(index) {
                self.slots.push(slot);
                let r = self.step(prev, remaining - 1, next, finish);
                self.slots.pop();
                r?;
            }
        }
        Ok(())
    }

    fn complete(&self, index: u64, finish: &mut Finish<'_>) {
        match finish {
            Finish::Collect(state) => state.add(index, &BigInt::one()),
            Finish::NormalOrdered { input, total } => {
                // leftmost annihilator of the guarded term acts last
                let mut idx = index;
                if let Some(gs) = self.guard {
                    match LadderOp::annihilate(gs).act_on_basis(idx) {
                        Some(i) => idx = i,
                        None => return,
                    }
                }
                let mut creators: Vec<usize> = Vec::with_capacity(self.slots.len() + 1);
                if let Some(gs) = self.guard {
                    creators.push(gs);
                }
                // `slots` holds the product's factors from right to left
                creators.extend(self.slots.iter().rev());
                for &s in creators.iter().rev() {
                    match LadderOp::create(s).act_on_basis(idx) {
                        Some(i) => idx = i,
                        None => return,
                    }
                }
                if idx == *input {
                    **total += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::named;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn c4_graph_state_bits() {
        let f = Fock::default();
        let g = named::example_c4();
        let psi = f.graph_state(&g).unwrap();
        let (idx, amp) = psi.nonzero().next().unwrap();
        assert_eq!(StateVector::bitstring(6, idx), "110011");
        assert!(amp.is_one());
        assert_eq!(psi.nonzero().count(), 1);

        let e2 = f.graph_state(&Graph::new(2, []).unwrap()).unwrap();
        assert_eq!(e2.nonzero().next().unwrap().0, 0);
        let k3 = f.graph_state(&named::complete(3)).unwrap();
        assert_eq!(StateVector::bitstring(3, k3.nonzero().next().unwrap().0), "111");
    }

    #[test]
    fn number_expectations_on_c4() {
        let f = Fock::default();
        let g = named::example_c4();
        assert_eq!(f.number_expectation(&g, 1, 2).unwrap(), BigInt::one());
        assert_eq!(f.number_expectation(&g, 1, 4).unwrap(), BigInt::zero());
        assert_eq!(f.number_expectation(&g, 2, 2).unwrap(), BigInt::zero());
    }

    #[test]
    fn ladder_table() {
        let reg = Register::vertex_space(&named::path(2), 24).unwrap();
        let zero = StateVector::basis(&reg, 0b00);
        let one = StateVector::basis(&reg, 0b01);
        assert!(apply_ladder(LadderOp::annihilate(0), &zero).unwrap().is_zero());
        assert_eq!(apply_ladder(LadderOp::create(0), &zero).unwrap(), one);
        assert_eq!(apply_ladder(LadderOp::annihilate(0), &one).unwrap(), zero);
        assert!(apply_ladder(LadderOp::create(0), &one).unwrap().is_zero());
        assert_eq!(apply_ladder(LadderOp::number(0), &one).unwrap(), one);
        assert!(apply_ladder(LadderOp::number(0), &zero).unwrap().is_zero());
        let aa = OperatorTerm::new(vec![LadderOp::annihilate(1), LadderOp::annihilate(1)]);
        let both = StateVector::basis(&reg, 0b11).sum(&one);
        assert!(aa.apply(&both).unwrap().is_zero());
        assert!(matches!(
            apply_ladder(LadderOp::number(2), &one),
            Err(Error::SlotOutOfRange { slot: 2, width: 2 })
        ));
    }

    #[test]
    fn expansion_terms() {
        let f = Fock::default();
        let c4 = named::example_c4();
        let terms = f.expand_walk_terms(&c4, 3, 1, 2, MatrixKind::NEdge).unwrap();
        assert_eq!(terms.len(), 4);
        let k2 = named::complete(2);
        let terms = f.expand_walk_terms(&k2, 1, 1, 2, MatrixKind::DEdge).unwrap();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].1, OperatorTerm::new(vec![LadderOp::annihilate(0)]));
        let terms = f.expand_walk_terms(&c4, 2, 1, 4, MatrixKind::MVertex).unwrap();
        let ops: Vec<_> = terms.iter().map(|(_, t)| t.clone()).collect();
        assert_eq!(
            ops,
            vec![
                OperatorTerm::new(vec![LadderOp::number(1), LadderOp::number(3)]),
                OperatorTerm::new(vec![LadderOp::number(2), LadderOp::number(3)]),
            ]
        );
    }

    #[test]
    fn normal_ordered_values() {
        let f = Fock::default();
        let c4 = named::example_c4();
        assert_eq!(f.normal_ordered_expectation(&c4, 3, 1, 2, MatrixKind::NEdge).unwrap(), big(1));
        assert_eq!(f.normal_ordered_expectation(&c4, 3, 1, 2, MatrixKind::MVertex).unwrap(), big(2));
        assert_eq!(f.guarded_path_expectation(&c4, 3, 1, 2).unwrap(), big(1));
        let empty = Graph::new(4, []).unwrap();
        assert_eq!(f.normal_ordered_expectation(&empty, 2, 1, 2, MatrixKind::NEdge).unwrap(), big(0));
        assert!(f.normal_ordered_expectation(&c4, 3, 1, 2, MatrixKind::DEdge).is_err());
        assert_eq!(f.plain_expectation(&c4, 3, 1, 2).unwrap(), big(4));
    }

    #[test]
    fn d_and_f_matrices() {
        let f = Fock::default();
        let c4 = named::example_c4();
        assert_eq!(f.d_matrix_quadratic_form(&c4, 3, 1, 2).unwrap(), big(1));
        assert_eq!(f.d_matrix_quadratic_form(&named::complete(2), 1, 1, 2).unwrap(), big(1));
        // eight closed Euler trails of the bowtie share one edge set
        assert_eq!(f.d_matrix_quadratic_form(&named::bowtie(), 6, 1, 1).unwrap(), big(64));
        assert_eq!(f.f_matrix_amplitude(&c4, 4, 1).unwrap(), big(2));
        assert_eq!(f.f_matrix_amplitude(&c4, 3, 1).unwrap(), big(0));
        assert_eq!(f.f_matrix_amplitude(&named::petersen(), 10, 1).unwrap(), big(0));
    }

    #[test]
    fn hamiltonicity() {
        let f = Fock::default();
        assert!(f.is_hamiltonian(&named::complete(4)).unwrap());
        assert!(!f.is_hamiltonian(&named::petersen()).unwrap());
        assert!(!f.is_hamiltonian(&named::path(3)).unwrap());
        assert!(f.is_hamiltonian(&named::cube()).unwrap());
    }

    #[test]
    fn capacity() {
        let f = Fock::default();
        assert!(f.graph_state(&named::complete(7)).is_ok());
        assert!(matches!(
            f.graph_state(&named::complete(8)),
            Err(Error::Capacity { required: 28, cap: 24 })
        ));
        let sub = f.with_edge_register(EdgeRegister::EdgesOnly);
        let p = named::petersen();
        assert_eq!(sub.graph_state(&p).unwrap().width(), 15);
        assert!(f.graph_state(&p).is_err());
        assert_eq!(sub.normal_ordered_expectation(&named::example_c4(), 3, 1, 2, MatrixKind::NEdge).unwrap(), big(1));
        assert_eq!(sub.number_expectation(&named::example_c4(), 1, 4).unwrap(), BigInt::zero());
    }

    #[test]
    fn normal_ordering_rewrites_number_products() {
        let t = OperatorTerm::new(vec![LadderOp::number(0), LadderOp::number(2)]);
        let no = t.normal_ordered().unwrap();
        assert_eq!(
            no.ops,
            vec![LadderOp::create(0), LadderOp::create(2), LadderOp::annihilate(0), LadderOp::annihilate(2)]
        );
        let rep = OperatorTerm::new(vec![LadderOp::number(1), LadderOp::number(1)]);
        assert_eq!(rep.normal_ordered().unwrap().act_on_basis(0b111), None);
        assert_eq!(rep.act_on_basis(0b111), Some(0b111));
        assert!(OperatorTerm::new(vec![LadderOp::create(0)]).normal_ordered().is_err());
    }

    #[test]
    fn state_json() {
        let f = Fock::default();
        let psi = f.graph_state(&named::example_c4()).unwrap();
        let json = serde_json::to_string(&psi.to_json()).unwrap();
        assert_eq!(json, r#"{"width":6,"kind":"edge_space","nonzero":[{"index":51,"amplitude":"1"}]}"#);
    }
}
