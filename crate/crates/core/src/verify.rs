//! Invariant sweeps over graph corpora.
//!
//! Every check is evaluated per graph in parallel; results are merged in
//! corpus order so the summary is independent of scheduling.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::corpus::{self, named};
use crate::error::{Error, Result};
use crate::fock::{Fock, MatrixKind};
use crate::graph::{adjacency_matrix, walk_matrix, CountMatrix, Graph};
use crate::nilpotent::{formal_adjacency_edges, vertex_observable_matrix, PolyMatrix, Symbolic, VertexVariant};
use crate::oracle::{Oracle, WalkClass};
use crate::report::{codes, Engine};

/// Largest order for which every connected graph is generated.
pub const MAX_EXHAUSTIVE_N: usize = 7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomSource {
    pub count: usize,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct VerifySweepConfig {
    /// Largest order of the exhaustive connected-graph corpus.
    pub n_max: usize,
    pub l_max: usize,
    pub exhaustive: bool,
    pub random: Option<RandomSource>,
    /// Adds the bowtie, Petersen graph and 3-cube.
    pub named: bool,
    pub extra: Vec<(String, Graph)>,
    pub engines: Vec<Engine>,
    pub caps: Caps,
}

impl Default for VerifySweepConfig {
    fn default() -> Self {
        VerifySweepConfig {
            n_max: 5,
            l_max: 5,
            exhaustive: true,
            random: None,
            named: false,
            extra: Vec::new(),
            engines: Engine::ALL.to_vec(),
            caps: Caps::default(),
        }
    }
}

impl VerifySweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.exhaustive && !(1..=MAX_EXHAUSTIVE_N).contains(&self.n_max) {
            return Err(Error::InvalidArgument(format!(
                "exhaustive corpus needs 1 <= n_max <= {MAX_EXHAUSTIVE_N}"
            )));
        }
        if let Some(r) = &self.random {
            if r.n == 0 || !(0.0..=1.0).contains(&r.p) {
                return Err(Error::InvalidArgument("random source needs n >= 1 and p in [0, 1]".into()));
            }
        }
        Ok(())
    }

    /// The corpus, in sweep order.
    pub fn corpus(&self) -> Vec<(String, Graph)> {
        let mut out = Vec::new();
        if self.exhaustive {
            for n in 1..=self.n_max {
                for (i, g) in corpus::connected_graphs(n).into_iter().enumerate() {
                    out.push((format!("connected-n{n}-#{i}"), g));
                }
            }
        }
        if let Some(r) = &self.random {
            for (i, g) in corpus::random_gnp(r.n, r.p, r.count, r.seed).into_iter().enumerate() {
                out.push((format!("gnp-n{}-p{}-seed{}-#{i}", r.n, r.p, r.seed), g));
            }
        }
        if self.named {
            out.push(("bowtie".into(), named::bowtie()));
            out.push(("petersen".into(), named::petersen()));
            out.push(("cube".into(), named::cube()));
        }
        out.extend(self.extra.iter().cloned());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expectation {
    /// Must hold exactly.
    Expected,
    /// A known discrepancy; passes when every case matches its characterization.
    Characterized,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: String,
    pub graph: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantResult {
    pub name: String,
    pub expectation: Expectation,
    pub checked: u64,
    pub failures: u64,
    pub skipped: u64,
    pub counterexample: Option<Counterexample>,
    pub flag: Option<String>,
    pub flagged: u64,
    pub flagged_examples: Vec<String>,
}

impl InvariantResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

const MAX_FLAG_EXAMPLES: usize = 5;

/// Catalogue: name, expectation, discrepancy code.
const INVARIANTS: &[(&str, Expectation, Option<&str>)] = {
    use Expectation::*;
    &[
        ("walk_symmetry", Expected, None),
        ("walk_length_one_is_adjacency", Expected, None),
        ("walk_matrix_vs_oracle", Expected, None),
        ("class_monotone", Expected, None),
        ("class_reversal_symmetry", Expected, None),
        ("path_length_bound", Expected, None),
        ("histogram_sums_to_trails", Expected, None),
        ("trail_symbolic_vs_oracle", Expected, None),
        ("trail_monomials_degree_l", Expected, None),
        ("trail_symbolic_le_walks", Expected, None),
        ("trail_fock_vs_oracle", Expected, None),
        ("literal_m_symbolic_vs_distinct_non_initial", Expected, None),
        ("literal_m_fock_vs_distinct_non_initial", Expected, None),
        ("guarded_m_symbolic_vs_path", Expected, None),
        ("guarded_m_fock_vs_path", Expected, None),
        ("cycle_symbolic_vs_directed_cycles", Expected, None),
        ("euler_symbolic_vs_oracle", Expected, None),
        ("number_expectation_is_adjacency", Expected, None),
        ("dmatrix_vs_sum_of_squares", Expected, None),
        ("f_amplitude_zero_below_n", Expected, None),
        ("f_amplitude_vs_directed_hamiltonian", Expected, None),
        ("is_hamiltonian_vs_oracle", Expected, None),
        ("prop2_literal_overcount", Characterized, Some(codes::PROP2_LITERAL_OVERCOUNT)),
        ("dmatrix_squared", Characterized, Some(codes::DMATRIX_SQUARED)),
    ]
};

pub fn invariant_names() -> impl Iterator<Item = &'static str> {
    INVARIANTS.iter().map(|(n, _, _)| *n)
}

#[derive(Debug, Default)]
struct CaseLog {
    entries: BTreeMap<&'static str, InvariantResult>,
}

struct Case<'a> {
    name: &'a str,
    graph: &'a Graph,
    log: CaseLog,
}

impl Case<'_> {
    fn entry(&mut self, inv: &'static str) -> &mut InvariantResult {
        self.log.entries.entry(inv).or_insert_with(|| {
            let (name, expectation, flag) = INVARIANTS
                .iter()
                .find(|(n, _, _)| *n == inv)
                .unwrap_or_else(|| panic!("unknown invariant {inv}"));
            InvariantResult {
                name: name.to_string(),
                expectation: *expectation,
                checked: 0,
                failures: 0,
                skipped: 0,
                counterexample: None,
                flag: flag.map(str::to_string),
                flagged: 0,
                flagged_examples: Vec::new(),
            }
        })
    }

    fn check(&mut self, inv: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        let (case, graph) = (self.name.to_string(), self.graph.to_edge_list());
        let e = self.entry(inv);
        e.checked += 1;
        if !ok {
            e.failures += 1;
            if e.counterexample.is_none() {
                e.counterexample = Some(Counterexample {
                    case,
                    graph,
                    detail: detail(),
                });
            }
        }
    }

    fn flag(&mut self, inv: &'static str, detail: String) {
        let case = self.name.to_string();
        let e = self.entry(inv);
        e.flagged += 1;
        if e.flagged_examples.len() < MAX_FLAG_EXAMPLES {
            e.flagged_examples.push(format!("{case}: {detail}"));
        }
    }

    fn skip(&mut self, inv: &'static str) {
        self.entry(inv).skipped += 1;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub graphs: usize,
    pub n_max: usize,
    pub l_max: usize,
    pub invariants: Vec<InvariantResult>,
    pub warnings: Vec<String>,
    pub all_pass: bool,
}

impl VerifySummary {
    pub fn invariant(&self, name: &str) -> Option<&InvariantResult> {
        self.invariants.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serialises");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "verify: {} graphs, l <= {}", self.graphs, self.l_max);
        for r in &self.invariants {
            let status = if r.passed() { "PASS" } else { "FAIL" };
            let _ = write!(
                s,
                "{status} {:<44} checked={} failed={} skipped={}",
                r.name, r.checked, r.failures, r.skipped
            );
            if let Some(code) = &r.flag {
                let _ = write!(s, " flagged[{code}]={}", r.flagged);
            }
            s.push('\n');
            if let Some(c) = &r.counterexample {
                let _ = writeln!(s, "     counterexample {}: {}", c.case, c.detail);
            }
            for ex in &r.flagged_examples {
                let _ = writeln!(s, "     flagged {ex}");
            }
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "{}", if self.all_pass { "ALL PASS" } else { "FAILURES" });
        s
    }
}

pub fn run_sweep(config: &VerifySweepConfig) -> Result<VerifySummary> {
    config.validate()?;
    let corpus = config.corpus();
    let logs: Vec<CaseLog> = corpus
        .par_iter()
        .map(|(name, g)| check_graph(name, g, config))
        .collect();

    let mut merged: BTreeMap<&'static str, InvariantResult> = BTreeMap::new();
    for log in logs {
        for (k, r) in log.entries {
            match merged.get_mut(k) {
                None => {
                    merged.insert(k, r);
                }
                Some(m) => {
                    m.checked += r.checked;
                    m.failures += r.failures;
                    m.skipped += r.skipped;
                    m.flagged += r.flagged;
                    if m.counterexample.is_none() {
                        m.counterexample = r.counterexample;
                    }
                    let room = MAX_FLAG_EXAMPLES.saturating_sub(m.flagged_examples.len());
                    m.flagged_examples.extend(r.flagged_examples.into_iter().take(room));
                }
            }
        }
    }
    let invariants: Vec<InvariantResult> = INVARIANTS
        .iter()
        .filter_map(|(name, _, _)| merged.remove(name))
        .collect();
    let mut warnings = Vec::new();
    if corpus.is_empty() {
        warnings.push("empty corpus: every invariant passes vacuously".to_string());
    }
    for r in &invariants {
        if r.skipped > 0 {
            warnings.push(format!("{}: {} checks skipped on capacity or budget limits", r.name, r.skipped));
        }
    }
    let all_pass = invariants.iter().all(InvariantResult::passed);
    Ok(VerifySummary {
        graphs: corpus.len(),
        n_max: config.n_max,
        l_max: config.l_max,
        invariants,
        warnings,
        all_pass,
    })
}

fn check_graph(name: &str, g: &Graph, config: &VerifySweepConfig) -> CaseLog {
    let mut case = Case {
        name,
        graph: g,
        log: CaseLog::default(),
    };
    let n = g.n();
    let l_max = config.l_max;
    let caps = &config.caps;
    let use_symbolic = config.engines.contains(&Engine::Symbolic);
    let use_fock = config.engines.contains(&Engine::Fock);
    let oracle = Oracle::new(g).with_budget(caps.node_budget);
    let symbolic = Symbolic::new(caps.max_monomials);
    let fock = Fock::from_caps(caps);

    let walks: Vec<CountMatrix> = (0..=l_max).map(|l| walk_matrix(g, l)).collect();
    let adj = adjacency_matrix(g);

    // symbolic powers, built incrementally
    let mut trail_power: Option<PolyMatrix> = None;
    let mut vertex_power: Option<PolyMatrix> = None;
    let trail_base = formal_adjacency_edges(g).ok();
    let vertex_base = vertex_observable_matrix(g).ok();

    for l in 0..=l_max {
        if use_symbolic && l >= 1 {
            trail_power = match (&trail_base, trail_power.take(), l) {
                (Some(m), _, 1) => Some(m.clone()),
                (Some(m), Some(prev), _) => m.multiply(&prev, caps.max_monomials).ok(),
                _ => None,
            };
            vertex_power = match (&vertex_base, vertex_power.take(), l) {
                (Some(m), _, 1) => Some(m.clone()),
                (Some(m), Some(prev), _) => m.multiply(&prev, caps.max_monomials).ok(),
                _ => None,
            };
        }
        for a in 0..n {
            for b in 0..n {
                let (u, v) = (a + 1, b + 1);
                let at = || format!("l={l} u={u} v={v}");
                let w = walks[l].get(a, b).clone();
                case.check("walk_symmetry", &w == walks[l].get(b, a), || format!("{}: asymmetric", at()));
                if l == 1 {
                    case.check("walk_length_one_is_adjacency", &w == adj.get(a, b), at);
                }
                let counts = (
                    oracle.count(l, u, v, WalkClass::Walk),
                    oracle.count(l, u, v, WalkClass::Trail),
                    oracle.count(l, u, v, WalkClass::Path),
                    oracle.count(l, u, v, WalkClass::DistinctNonInitial),
                );
                let (ow, t, p, dni) = match counts {
                    (Ok(ow), Ok(t), Ok(p), Ok(d)) => (ow, t, p, d),
                    _ => {
                        for inv in ["walk_matrix_vs_oracle", "class_monotone"] {
                            case.skip(inv);
                        }
                        continue;
                    }
                };
                case.check("walk_matrix_vs_oracle", ow == w, || format!("{}: matrix {w} vs oracle {ow}", at()));
                case.check("class_monotone", p <= t && t <= ow && p <= dni && dni <= ow, || {
                    format!("{}: p={p} t={t} dni={dni} w={ow}", at())
                });
                if a < b {
                    let rev_ok = [WalkClass::Walk, WalkClass::Trail, WalkClass::Path]
                        .iter()
                        .all(|&c| oracle.count(l, u, v, c).ok() == oracle.count(l, v, u, c).ok());
                    case.check("class_reversal_symmetry", rev_ok, at);
                }
                if (u != v && l + 1 > n) || (u == v && l > n) {
                    case.check("path_length_bound", p.is_zero(), || format!("{}: p={p}", at()));
                }
                if l == 0 {
                    continue;
                }

                let hist = oracle.trail_edge_set_histogram(l, u, v).ok();
                if let Some(h) = &hist {
                    let total: BigUint = h.values().sum();
                    case.check("histogram_sums_to_trails", total == t, || format!("{}: {total} vs {t}", at()));
                }

                if use_symbolic {
                    match &trail_power {
                        Some(pm) => {
                            let entry = pm.get(a, b);
                            let st = entry.coefficient_sum();
                            case.check("trail_symbolic_vs_oracle", st == t, || format!("{}: symbolic {st} vs oracle {t}", at()));
                            case.check(
                                "trail_monomials_degree_l",
                                entry.terms().all(|(m, c)| m.degree() == l && c >= &BigUint::one()),
                                at,
                            );
                            case.check("trail_symbolic_le_walks", st <= w, at);
                        }
                        None => {
                            case.skip("trail_symbolic_vs_oracle");
                        }
                    }
                    match &vertex_power {
                        Some(pm) => {
                            let lit = pm.get(a, b).coefficient_sum();
                            case.check("literal_m_symbolic_vs_distinct_non_initial", lit == dni, || {
                                format!("{}: literal {lit} vs dni {dni}", at())
                            });
                            if u != v {
                                let ok = lit >= p && ((lit > p) == (dni > p));
                                case.check("prop2_literal_overcount", ok, || format!("{}: literal {lit} path {p}", at()));
                                if lit > p {
                                    case.flag("prop2_literal_overcount", format!("{}: literal {lit} > path {p}", at()));
                                }
                            }
                            if u == v && l >= 3 {
                                case.check("cycle_symbolic_vs_directed_cycles", lit == p, || {
                                    format!("{}: literal {lit} vs directed cycles {p}", at())
                                });
                            }
                        }
                        None => case.skip("literal_m_symbolic_vs_distinct_non_initial"),
                    }
                    if u != v {
                        match symbolic.path_count(g, l, u, v, VertexVariant::StartGuarded) {
                            Ok(gp) => case.check("guarded_m_symbolic_vs_path", gp == p, || {
                                format!("{}: guarded {gp} vs path {p}", at())
                            }),
                            Err(_) => case.skip("guarded_m_symbolic_vs_path"),
                        }
                    }
                }

                if use_fock {
                    match fock.normal_ordered_expectation(g, l, u, v, MatrixKind::NEdge) {
                        Ok(ft) => case.check("trail_fock_vs_oracle", ft == t, || format!("{}: fock {ft} vs oracle {t}", at())),
                        Err(_) => case.skip("trail_fock_vs_oracle"),
                    }
                    match fock.normal_ordered_expectation(g, l, u, v, MatrixKind::MVertex) {
                        Ok(fm) => case.check("literal_m_fock_vs_distinct_non_initial", fm == dni, || {
                            format!("{}: fock {fm} vs dni {dni}", at())
                        }),
                        Err(_) => case.skip("literal_m_fock_vs_distinct_non_initial"),
                    }
                    if u != v {
                        match fock.guarded_path_expectation(g, l, u, v) {
                            Ok(fg) => case.check("guarded_m_fock_vs_path", fg == p, || format!("{}: fock {fg} vs path {p}", at())),
                            Err(_) => case.skip("guarded_m_fock_vs_path"),
                        }
                    }
                    match (fock.d_matrix_quadratic_form(g, l, u, v), &hist) {
                        (Ok(d), Some(h)) => {
                            let squares: BigUint = h.values().map(|c| c * c).sum();
                            let all_single = h.values().all(|c| c.is_one());
                            case.check("dmatrix_vs_sum_of_squares", d == squares, || {
                                format!("{}: quadratic form {d} vs sum t_S^2 {squares}", at())
                            });
                            case.check("dmatrix_squared", (d == t) == all_single, || {
                                format!("{}: quadratic form {d} trail count {t}", at())
                            });
                            if d != t {
                                case.flag("dmatrix_squared", format!("{}: sum t_S^2 = {d} != t = {t}", at()));
                            }
                        }
                        _ => {
                            case.skip("dmatrix_vs_sum_of_squares");
                            case.skip("dmatrix_squared");
                        }
                    }
                    if l == 1 {
                        match fock.number_expectation(g, u, v) {
                            Ok(e) => case.check("number_expectation_is_adjacency", e.magnitude() == adj.get(a, b), at),
                            Err(_) => case.skip("number_expectation_is_adjacency"),
                        }
                    }
                    if u == v && l < n {
                        match fock.f_matrix_amplitude(g, l, u) {
                            Ok(f) => case.check("f_amplitude_zero_below_n", f.is_zero(), || format!("{}: amplitude {f}", at())),
                            Err(_) => case.skip("f_amplitude_zero_below_n"),
                        }
                    }
                }
            }
        }
    }

    for a in 0..n {
        let u = a + 1;
        if use_symbolic {
            match (symbolic.euler_trail_count(g, u, u), oracle.count_closed_euler_trails(u)) {
                (Ok(s), Ok(o)) => case.check("euler_symbolic_vs_oracle", s == o, || format!("u={u}: symbolic {s} vs oracle {o}")),
                _ => case.skip("euler_symbolic_vs_oracle"),
            }
        }
        if use_fock && n >= 3 {
            match (fock.f_matrix_amplitude(g, n, u), oracle.count_hamiltonian_cycles_through(u, true)) {
                (Ok(f), Ok(h)) => case.check("f_amplitude_vs_directed_hamiltonian", f == h, || {
                    format!("u={u}: amplitude {f} vs directed Hamiltonian {h}")
                }),
                _ => case.skip("f_amplitude_vs_directed_hamiltonian"),
            }
        }
    }
    if use_fock && n >= 3 {
        match (fock.is_hamiltonian(g), oracle.count_hamiltonian_cycles_through(1, false)) {
            (Ok(hf), Ok(h)) => case.check("is_hamiltonian_vs_oracle", hf == !h.is_zero(), || {
                format!("fock says {hf}, oracle counts {h} cycles")
            }),
            _ => case.skip("is_hamiltonian_vs_oracle"),
        }
    }
    case.log
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_passes() {
        let cfg = VerifySweepConfig {
            n_max: 4,
            l_max: 4,
            ..Default::default()
        };
        let s = run_sweep(&cfg).unwrap();
        assert_eq!(s.graphs, 1 + 1 + 2 + 6);
        assert!(s.all_pass, "{}", s.to_text());
        let prop2 = s.invariant("prop2_literal_overcount").unwrap();
        assert!(prop2.flagged > 0);
    }

    #[test]
    fn bowtie_is_flagged() {
        let cfg = VerifySweepConfig {
            exhaustive: false,
            l_max: 6,
            extra: vec![("bowtie".into(), named::bowtie())],
            ..Default::default()
        };
        let s = run_sweep(&cfg).unwrap();
        assert!(s.all_pass, "{}", s.to_text());
        let d = s.invariant("dmatrix_squared").unwrap();
        assert!(d.flagged > 0);
        assert!(d.flagged_examples.iter().any(|e| e.starts_with("bowtie")));
    }

    #[test]
    fn empty_corpus_warns() {
        let cfg = VerifySweepConfig {
            exhaustive: false,
            ..Default::default()
        };
        let s = run_sweep(&cfg).unwrap();
        assert_eq!(s.graphs, 0);
        assert!(s.all_pass);
        assert!(s.warnings[0].contains("empty corpus"));
    }

    #[test]
    fn capacity_limits_skip_not_fail() {
        let cfg = VerifySweepConfig {
            exhaustive: false,
            l_max: 2,
            extra: vec![("k8".into(), named::complete(8))],
            ..Default::default()
        };
        let s = run_sweep(&cfg).unwrap();
        assert!(s.all_pass);
        assert!(s.invariant("trail_fock_vs_oracle").unwrap().skipped > 0);
    }

    #[test]
    fn rejects_oversized_exhaustive() {
        let cfg = VerifySweepConfig {
            n_max: 9,
            ..Default::default()
        };
        assert!(run_sweep(&cfg).is_err());
    }
}
