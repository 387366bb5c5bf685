//! Resource caps shared by the engines.
//!
//! Defaults can be overridden with `TRAILCOUNT_MAX_QUBITS`,
//! `TRAILCOUNT_MAX_MONOMIALS` and `TRAILCOUNT_NODE_BUDGET`.

use std::env;

pub const DEFAULT_MAX_QUBITS: usize = 24;
pub const DEFAULT_MAX_MONOMIALS: usize = 10_000_000;
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

pub const ENV_MAX_QUBITS: &str = "TRAILCOUNT_MAX_QUBITS";
pub const ENV_MAX_MONOMIALS: &str = "TRAILCOUNT_MAX_MONOMIALS";
pub const ENV_NODE_BUDGET: &str = "TRAILCOUNT_NODE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Widest qubit register the Fock engine will build.
    pub max_qubits: usize,
    /// Live monomials allowed in one polynomial matrix.
    pub max_monomials: usize,
    /// DFS nodes one oracle query may visit.
    pub node_budget: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_qubits: DEFAULT_MAX_QUBITS,
            max_monomials: DEFAULT_MAX_MONOMIALS,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Caps {
    /// Defaults, overridden by any of the environment variables that parse.
    pub fn from_env() -> Self {
        let mut caps = Caps::default();
        if let Some(v) = read_env(ENV_MAX_QUBITS) {
            caps.max_qubits = v as usize;
        }
        if let Some(v) = read_env(ENV_MAX_MONOMIALS) {
            caps.max_monomials = v as usize;
        }
        if let Some(v) = read_env(ENV_NODE_BUDGET) {
            caps.node_budget = v;
        }
        caps
    }
}

fn read_env(key: &str) -> Option<u64> {
    env::var(key).ok().and_then(|s| s.trim().parse().ok())
}
