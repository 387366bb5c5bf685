//! Reproduction of the four-cycle worked example: the adjacency matrix,
//! the walk expansion of entry (1,2) of the cubed formal adjacency matrix,
//! the graph basis state and the normal-ordered expectation that isolates
//! the single trail.

use std::time::Instant;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fock::{Fock, MatrixKind, StateVector};
use crate::graph::{adjacency_matrix, walk_count, Graph};
use crate::nilpotent::formal_walk_polynomial;
use crate::oracle::{Oracle, WalkClass};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleCheck {
    pub id: String,
    pub expected: String,
    pub actual: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleReport {
    pub checks: Vec<ExampleCheck>,
    pub reproduced: usize,
    pub total: usize,
    pub elapsed_ms: f64,
}

impl ExampleReport {
    pub fn all_ok(&self) -> bool {
        self.reproduced == self.total
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let mark = if c.ok { "ok  " } else { "MISS" };
            s.push_str(&format!("{mark} {:<28} expected {:<40} got {}\n", c.id, c.expected, c.actual));
        }
        s.push_str(&format!("{}/{} worked-example values reproduced\n", self.reproduced, self.total));
        s
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialises");
        s.push('\n');
        s
    }
}

/// Edge multiset rendered as e.g. `e12*e13^2`, with labels `uv`.
fn render_monomial(g: &Graph, mono: &[(usize, u32)]) -> String {
    let slots = g.slots();
    mono.iter()
        .map(|&(s, e)| {
            let (a, b) = slots.pair(s);
            if e == 1 {
                format!("e{}{}", a + 1, b + 1)
            } else {
                format!("e{}{}^{e}", a + 1, b + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

fn rows_to_string(rows: &[Vec<String>]) -> String {
    let inner: Vec<String> = rows.iter().map(|r| format!("[{}]", r.join(","))).collect();
    format!("[{}]", inner.join(","))
}

/// Checks every value of the worked example against `g`, which should be
/// the four-cycle with edges 12, 13, 24, 34. Any other graph is a negative
/// control and produces mismatches.
pub fn run(g: &Graph) -> Result<ExampleReport> {
    let started = Instant::now();
    let mut checks = Vec::new();
    let mut push = |id: &str, expected: String, actual: String| {
        let ok = expected == actual;
        checks.push(ExampleCheck {
            id: id.to_string(),
            expected,
            actual,
            ok,
        });
    };
    let has = |v: usize| v <= g.n();
    let fock = Fock::default();

    push(
        "adjacency_matrix",
        "[[0,1,1,0],[1,0,0,1],[1,0,0,1],[0,1,1,0]]".into(),
        rows_to_string(&adjacency_matrix(g).to_rows()),
    );

    let (expansion, walks, psi, n12, n14, normal, tp) = if has(4) {
        let formal = formal_walk_polynomial(g, 3, 1, 2)?;
        let mut monos: Vec<String> = formal
            .terms
            .iter()
            .map(|(m, c)| {
                let body = render_monomial(g, m);
                if c == &BigUint::from(1u32) {
                    body
                } else {
                    format!("{c}*{body}")
                }
            })
            .collect();
        monos.sort();

        let walks = walk_count(g, 3, 1, 2)?.to_string();

        let psi = match fock.graph_state(g) {
            Ok(state) => state
                .nonzero()
                .map(|(i, _)| StateVector::bitstring(state.width(), i))
                .collect::<Vec<_>>()
                .join("+"),
            Err(e) => e.to_string(),
        };

        let n12 = fock.number_expectation(g, 1, 2)?.to_string();
        let n14 = fock.number_expectation(g, 1, 4)?.to_string();

        // term-by-term normal-ordered expectations, then the pruned total
        let reg_psi = fock.graph_state(g)?;
        let input = reg_psi.nonzero().next().map(|(i, _)| i).unwrap_or(0);
        let mut per_term = Vec::new();
        for (walk, term) in fock.expand_walk_terms(g, 3, 1, 2, MatrixKind::NEdge)? {
            let value = match term.normal_ordered()?.act_on_basis(input) {
                Some(out) if out == input => 1,
                _ => 0,
            };
            per_term.push((walk.to_string(), value));
        }
        per_term.sort();
        let term_sum: u32 = per_term.iter().map(|(_, v)| v).sum();
        let total = fock.normal_ordered_expectation(g, 3, 1, 2, MatrixKind::NEdge)?;
        let normal = format!(
            "{} [{}]",
            if BigUint::from(term_sum) == total { total.to_string() } else { format!("{term_sum}!={total}") },
            per_term.iter().map(|(w, v)| format!("{w}:{v}")).collect::<Vec<_>>().join(" ")
        );

        let oracle = Oracle::new(g);
        let t = oracle.count(3, 1, 2, WalkClass::Trail)?;
        let p = oracle.count(3, 1, 2, WalkClass::Path)?;
        let tp = format!("t={t} p={p}");
        (monos.join(" + "), walks, psi, n12, n14, normal, tp)
    } else {
        let missing = "graph has fewer than 4 vertices".to_string();
        (
            missing.clone(),
            missing.clone(),
            missing.clone(),
            missing.clone(),
            missing.clone(),
            missing.clone(),
            missing,
        )
    };

    push("walk_expansion_a3_12", "e12*e13^2 + e12*e24^2 + e12^3 + e13*e24*e34".into(), expansion);
    push("walk_count_w3_12", "4".into(), walks);
    push("graph_state", "110011".into(), psi);
    push("number_expectation_12", "1".into(), n12);
    push("number_expectation_14", "0".into(), n14);
    push(
        "normal_ordered_n3_12",
        "1 [1-2-1-2:0 1-2-4-2:0 1-3-1-2:0 1-3-4-2:1]".into(),
        normal,
    );
    push("trails_and_paths_3_12", "t=1 p=1".into(), tp);

    let reproduced = checks.iter().filter(|c| c.ok).count();
    let total = checks.len();
    Ok(ExampleReport {
        checks,
        reproduced,
        total,
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}
