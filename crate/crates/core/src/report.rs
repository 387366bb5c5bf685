//! Cross-engine count reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fock::{EdgeRegister, Fock, MatrixKind};
use crate::graph::{walk_count, Graph};
use crate::nilpotent::{Symbolic, VertexVariant};
use crate::oracle::{Oracle, WalkClass};

/// Machine-readable discrepancy codes.
pub mod codes {
    /// The literal vertex observable exceeds the path count.
    pub const PROP2_LITERAL_OVERCOUNT: &str = "PROP2_LITERAL_OVERCOUNT";
    /// The annihilator quadratic form is a sum of squared per-edge-set trail counts.
    pub const DMATRIX_SQUARED: &str = "DMATRIX_SQUARED";
    /// The value comes from the start-guarded observable, which is not part
    /// of the original construction.
    pub const GUARDED_VARIANT: &str = "GUARDED_VARIANT";
    /// The all-zero overlap of the annihilator cycle amplitude vanishes below length n.
    pub const F_AMPLITUDE_FULL_LENGTH_ONLY: &str = "F_AMPLITUDE_FULL_LENGTH_ONLY";
    /// Cycle values count directed traversals.
    pub const DIRECTED_CYCLES: &str = "DIRECTED_CYCLES";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "lowercase")]
pub enum CountKind {
    Walks,
    Trails,
    Paths,
    Euler,
    Cycles,
    Hamiltonian,
}

impl std::str::FromStr for CountKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "walks" => CountKind::Walks,
            "trails" => CountKind::Trails,
            "paths" => CountKind::Paths,
            "euler" => CountKind::Euler,
            "cycles" => CountKind::Cycles,
            "hamiltonian" => CountKind::Hamiltonian,
            other => return Err(Error::InvalidArgument(format!("unknown kind {other:?}"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Oracle,
    Symbolic,
    Fock,
}

impl Engine {
    pub const ALL: [Engine; 3] = [Engine::Oracle, Engine::Symbolic, Engine::Fock];

    pub fn name(self) -> &'static str {
        match self {
            Engine::Oracle => "oracle",
            Engine::Symbolic => "symbolic",
            Engine::Fock => "fock",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountQuery {
    pub kind: CountKind,
    /// Ignored for `euler` (uses |E|) and `hamiltonian` (uses n).
    pub length: Option<usize>,
    pub from: usize,
    /// Defaults to `from` for the closed kinds.
    pub to: Option<usize>,
    pub engines: Vec<Engine>,
    pub variant: VertexVariant,
    pub edge_register: EdgeRegister,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EngineStatus {
    Ok,
    Capacity,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineResult {
    pub status: EngineStatus,
    pub value: Option<String>,
    pub error: Option<String>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub graph_id: String,
    pub kind: CountKind,
    pub l: usize,
    pub u: usize,
    pub v: usize,
    pub variant: Option<String>,
    pub engines: BTreeMap<String, EngineResult>,
    /// Keyed `a~b` for every pair of engines that both produced a value.
    pub agreement: BTreeMap<String, bool>,
    /// Related quantities that are not competing answers to the query.
    pub auxiliary: BTreeMap<String, String>,
    /// `CODE: explanation` entries.
    pub notes: Vec<String>,
}

impl CountReport {
    pub fn value(&self, engine: Engine) -> Option<&str> {
        self.engines.get(engine.name())?.value.as_deref()
    }

    pub fn all_agree(&self) -> bool {
        self.agreement.values().all(|&b| b)
    }

    pub fn capacity_exceeded(&self) -> bool {
        self.engines.values().any(|e| e.status == EngineStatus::Capacity)
    }

    pub fn has_note(&self, code: &str) -> bool {
        self.notes.iter().any(|n| n.starts_with(code))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("bad report JSON: {e}")))
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["graph_id", "kind", "l", "u", "v", "engine", "status", "value", "error", "wall_time_ms"])
            .expect("in-memory write");
        let kind = serde_json::to_value(self.kind).unwrap();
        for (name, r) in &self.engines {
            w.write_record([
                self.graph_id.as_str(),
                kind.as_str().unwrap(),
                &self.l.to_string(),
                &self.u.to_string(),
                &self.v.to_string(),
                name,
                serde_json::to_value(r.status).unwrap().as_str().unwrap(),
                r.value.as_deref().unwrap_or(""),
                r.error.as_deref().unwrap_or(""),
                &format!("{:.3}", r.wall_time_ms),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let kind = serde_json::to_value(self.kind).unwrap();
        let _ = writeln!(
            s,
            "{} l={} {}->{} on {}",
            kind.as_str().unwrap(),
            self.l,
            self.u,
            self.v,
            self.graph_id
        );
        if let Some(v) = &self.variant {
            let _ = writeln!(s, "  variant: {v}");
        }
        for (name, r) in &self.engines {
            match (&r.value, &r.error) {
                (Some(v), _) => {
                    let _ = writeln!(s, "  {name:<9} {v}  ({:.3} ms)", r.wall_time_ms);
                }
                (None, e) => {
                    let _ = writeln!(s, "  {name:<9} ERROR {}", e.as_deref().unwrap_or("?"));
                }
            }
        }
        for (k, v) in &self.auxiliary {
            let _ = writeln!(s, "  [{k}] {v}");
        }
        for (pair, ok) in &self.agreement {
            let _ = writeln!(s, "  agree {pair}: {ok}");
        }
        for note in &self.notes {
            let _ = writeln!(s, "  note {note}");
        }
        s
    }
}

/// `sha256:` plus the first 16 hex digits of the digest of `bytes`.
pub fn content_id(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    format!("sha256:{}", &hex::encode(digest)[..16])
}

fn timed(f: impl FnOnce() -> Result<BigUint>) -> (Result<BigUint>, f64) {
    let t = Instant::now();
    let r = f();
    (r, t.elapsed().as_secs_f64() * 1e3)
}

fn engine_result((r, ms): (Result<BigUint>, f64)) -> EngineResult {
    match r {
        Ok(v) => EngineResult {
            status: EngineStatus::Ok,
            value: Some(v.to_string()),
            error: None,
            wall_time_ms: ms,
        },
        Err(e) => EngineResult {
            status: if e.is_capacity() { EngineStatus::Capacity } else { EngineStatus::Error },
            value: None,
            error: Some(e.to_string()),
            wall_time_ms: ms,
        },
    }
}

/// Runs `query` on every requested engine. Bad queries (vertex out of
/// range, impossible lengths) are errors; engine failures are recorded in
/// the report.
pub fn run_count(g: &Graph, graph_id: &str, query: &CountQuery, caps: &Caps) -> Result<CountReport> {
    let u = query.from;
    g.index(u)?;
    let closed = matches!(query.kind, CountKind::Euler | CountKind::Cycles | CountKind::Hamiltonian);
    let v = match query.to {
        Some(v) => v,
        None if closed => u,
        None => return Err(Error::InvalidArgument("--to is required for this kind".into())),
    };
    g.index(v)?;
    let l = match query.kind {
        CountKind::Euler => g.edge_count(),
        CountKind::Hamiltonian => g.n(),
        _ => query
            .length
            .ok_or_else(|| Error::InvalidArgument("--length is required for this kind".into()))?,
    };
    match query.kind {
        CountKind::Cycles | CountKind::Hamiltonian if u != v => {
            return Err(Error::InvalidArgument("cycle counts are closed: --to must equal --from".into()))
        }
        CountKind::Cycles if l < 3 => {
            return Err(Error::InvalidArgument(format!("cycle length must be >= 3, got {l}")))
        }
        CountKind::Hamiltonian if l < 3 => {
            return Err(Error::InvalidArgument("Hamiltonicity needs n >= 3".into()))
        }
        _ => {}
    }

    let oracle = Oracle::new(g).with_budget(caps.node_budget);
    let symbolic = Symbolic::new(caps.max_monomials);
    let fock = Fock::from_caps(caps).with_edge_register(query.edge_register);

    let mut report = CountReport {
        graph_id: graph_id.to_string(),
        kind: query.kind,
        l,
        u,
        v,
        variant: None,
        engines: BTreeMap::new(),
        agreement: BTreeMap::new(),
        auxiliary: BTreeMap::new(),
        notes: Vec::new(),
    };

    let mut engines = query.engines.clone();
    engines.sort();
    engines.dedup();
    for &engine in &engines {
        let measured = match (query.kind, engine) {
            (CountKind::Walks, Engine::Oracle) => timed(|| oracle.count(l, u, v, WalkClass::Walk)),
            (CountKind::Walks, Engine::Symbolic) => timed(|| walk_count(g, l, u, v)),
            (CountKind::Walks, Engine::Fock) => timed(|| fock.plain_expectation(g, l, u, v)),
            (CountKind::Trails | CountKind::Euler, Engine::Oracle) => timed(|| oracle.count(l, u, v, WalkClass::Trail)),
            (CountKind::Trails | CountKind::Euler, Engine::Symbolic) => timed(|| symbolic.trail_count(g, l, u, v)),
            (CountKind::Trails | CountKind::Euler, Engine::Fock) => {
                timed(|| fock.normal_ordered_expectation(g, l, u, v, MatrixKind::NEdge))
            }
            (CountKind::Paths, Engine::Oracle) => timed(|| oracle.count(l, u, v, WalkClass::Path)),
            (CountKind::Paths, Engine::Symbolic) => timed(|| symbolic.path_count(g, l, u, v, query.variant)),
            (CountKind::Paths, Engine::Fock) => match query.variant {
                VertexVariant::Literal => timed(|| fock.normal_ordered_expectation(g, l, u, v, MatrixKind::MVertex)),
                VertexVariant::StartGuarded => timed(|| fock.guarded_path_expectation(g, l, u, v)),
            },
            (CountKind::Cycles, Engine::Oracle) => timed(|| oracle.count(l, u, u, WalkClass::Path)),
            (CountKind::Cycles | CountKind::Hamiltonian, Engine::Symbolic) => timed(|| symbolic.cycle_count(g, l, u)),
            (CountKind::Cycles, Engine::Fock) => {
                timed(|| fock.normal_ordered_expectation(g, l, u, u, MatrixKind::MVertex))
            }
            (CountKind::Hamiltonian, Engine::Oracle) => timed(|| oracle.count_hamiltonian_cycles_through(u, true)),
            (CountKind::Hamiltonian, Engine::Fock) => timed(|| fock.f_matrix_amplitude(g, l, u)),
        };
        report.engines.insert(engine.name().to_string(), engine_result(measured));
    }

    annotate(g, query, &oracle, &fock, &mut report);

    let valued: Vec<(&String, &String)> = report
        .engines
        .iter()
        .filter_map(|(k, r)| r.value.as_ref().map(|v| (k, v)))
        .collect();
    for i in 0..valued.len() {
        for j in i + 1..valued.len() {
            report
                .agreement
                .insert(format!("{}~{}", valued[i].0, valued[j].0), valued[i].1 == valued[j].1);
        }
    }
    Ok(report)
}

fn annotate(g: &Graph, query: &CountQuery, oracle: &Oracle<'_>, fock: &Fock, report: &mut CountReport) {
    let (l, u, v) = (report.l, report.u, report.v);
    let wants = |e: Engine| query.engines.contains(&e);
    let mut note = |code: &str, text: String| report.notes.push(format!("{code}: {text}"));
    let mut aux = BTreeMap::new();
    match query.kind {
        CountKind::Trails | CountKind::Euler => {
            if wants(Engine::Fock) {
                if let Ok(d) = fock.d_matrix_quadratic_form(g, l, u, v) {
                    aux.insert("fock_d_quadratic_form".to_string(), d.to_string());
                    if let Ok(t) = oracle.count(l, u, v, WalkClass::Trail) {
                        if d != t {
                            note(
                                codes::DMATRIX_SQUARED,
                                format!("annihilator quadratic form {d} = sum of squared per-edge-set trail counts, trail count is {t}"),
                            );
                        }
                    }
                }
            }
        }
        CountKind::Paths => {
            report.variant = Some(
                match query.variant {
                    VertexVariant::Literal => "literal",
                    VertexVariant::StartGuarded => "guarded",
                }
                .to_string(),
            );
            if query.variant == VertexVariant::StartGuarded {
                note(
                    codes::GUARDED_VARIANT,
                    "start-guarded observable N_u M^l is a correction, not the original construction".into(),
                );
            }
            if let Ok(dni) = oracle.count(l, u, v, WalkClass::DistinctNonInitial) {
                aux.insert("oracle_distinct_non_initial".to_string(), dni.to_string());
                if query.variant == VertexVariant::Literal {
                    if let Ok(p) = oracle.count(l, u, v, WalkClass::Path) {
                        if dni > p {
                            note(
                                codes::PROP2_LITERAL_OVERCOUNT,
                                format!("literal vertex observable counts {dni} walks with distinct non-initial vertices, path count is {p}"),
                            );
                        }
                    }
                }
            }
        }
        CountKind::Cycles => {
            note(codes::DIRECTED_CYCLES, "each undirected cycle through u is counted once per direction".into());
            if let Ok(c) = oracle.count(l, u, u, WalkClass::Path) {
                aux.insert("oracle_undirected".to_string(), (c.clone() / 2u32).to_string());
                if wants(Engine::Fock) {
                    if let Ok(f) = fock.f_matrix_amplitude(g, l, u) {
                        aux.insert("fock_f_amplitude".to_string(), f.to_string());
                        if f != c && l < g.n() {
                            note(
                                codes::F_AMPLITUDE_FULL_LENGTH_ONLY,
                                format!("<0..0|F^l|1..1> is {f} for l={l} < n={}, directed cycle count is {c}", g.n()),
                            );
                        }
                    }
                }
            }
        }
        CountKind::Hamiltonian => {
            note(codes::DIRECTED_CYCLES, "each Hamiltonian cycle is counted once per direction".into());
            if let Ok(c) = oracle.count_hamiltonian_cycles_through(u, false) {
                aux.insert("oracle_undirected".to_string(), c.to_string());
                aux.insert("hamiltonian".to_string(), (!c.is_zero()).to_string());
            }
        }
        CountKind::Walks => {}
    }
    report.auxiliary.extend(aux);
}
