//! Wall-time tables across graph families, sizes and engines.

use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::corpus::named;
use crate::error::{Error, Result};
use crate::nilpotent::VertexVariant;
use crate::report::{run_count, CountKind, CountQuery, Engine, EngineStatus};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub family: String,
    pub n_min: usize,
    pub n_max: usize,
    pub kind: CountKind,
    /// Defaults to `n - 1`.
    pub length: Option<usize>,
    pub from: usize,
    /// Defaults to 2 for open kinds.
    pub to: Option<usize>,
    pub engines: Vec<Engine>,
    pub variant: VertexVariant,
    pub caps: Caps,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub kind: CountKind,
    pub l: usize,
    pub engine: String,
    /// `ok`, `DNF` (capacity or budget) or `error`.
    pub status: String,
    pub value: String,
    pub wall_time_ms: f64,
    /// Whether every engine that finished on this graph agreed.
    pub agree: bool,
}

pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.n_min > config.n_max {
        return Err(Error::InvalidArgument("n_min exceeds n_max".into()));
    }
    let mut rows = Vec::new();
    let mut seen_fixed = false;
    for n in config.n_min..=config.n_max {
        let Some(g) = named::by_family(&config.family, n) else {
            return Err(Error::InvalidArgument(format!(
                "no {} graph on {n} vertices",
                config.family
            )));
        };
        // fixed-size families run once
        if matches!(config.family.as_str(), "petersen" | "bowtie" | "cube") {
            if seen_fixed {
                break;
            }
            seen_fixed = true;
        }
        let open = matches!(config.kind, CountKind::Walks | CountKind::Trails | CountKind::Paths);
        let query = CountQuery {
            kind: config.kind,
            length: Some(config.length.unwrap_or(g.n().saturating_sub(1).max(1))),
            from: config.from,
            to: if open { Some(config.to.unwrap_or(2)) } else { config.to },
            engines: config.engines.clone(),
            variant: config.variant,
            edge_register: Default::default(),
        };
        let report = run_count(&g, &format!("{}-{}", config.family, g.n()), &query, &config.caps)?;
        let agree = report.all_agree();
        for (engine, r) in &report.engines {
            rows.push(BenchRow {
                family: config.family.clone(),
                n: g.n(),
                kind: config.kind,
                l: report.l,
                engine: engine.clone(),
                status: match r.status {
                    EngineStatus::Ok => "ok",
                    EngineStatus::Capacity => "DNF",
                    EngineStatus::Error => "error",
                }
                .to_string(),
                value: r.value.clone().unwrap_or_default(),
                wall_time_ms: r.wall_time_ms,
                agree,
            });
        }
    }
    Ok(rows)
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}
