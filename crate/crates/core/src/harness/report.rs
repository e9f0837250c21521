//! Suite reports and self-contained replay bundles.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::complex::{ComplexFile, SimplicialComplex};
use crate::error::Result;
use crate::hypergraph::{Hypergraph, HypergraphFile};
use crate::limits::Limits;
use crate::matroid::{Matroid, MatroidFile};

/// On-disk form of one case's input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CaseInstance {
    Matroid { m: MatroidFile },
    Pair { m: MatroidFile, n: MatroidFile },
    Family { matroids: Vec<MatroidFile>, v: usize },
    Complex { c: ComplexFile },
    Complexes { a: ComplexFile, b: ComplexFile },
    Hypergraph { h: HypergraphFile },
    Tightness { p: usize, q: usize },
}

/// In-memory form of one case's input.
#[derive(Clone, Debug)]
pub enum Live {
    Matroid(Matroid),
    Pair(Matroid, Matroid),
    Family(Vec<Matroid>, usize),
    Complex(SimplicialComplex),
    Complexes(SimplicialComplex, SimplicialComplex),
    Hypergraph(Hypergraph),
    Tightness(usize, usize),
}

impl Live {
    pub fn to_instance(&self) -> CaseInstance {
        match self {
            Live::Matroid(m) => CaseInstance::Matroid { m: m.to_file() },
            Live::Pair(m, n) => CaseInstance::Pair { m: m.to_file(), n: n.to_file() },
            Live::Family(ms, v) => {
                CaseInstance::Family { matroids: ms.iter().map(|m| m.to_file()).collect(), v: *v }
            }
            Live::Complex(c) => CaseInstance::Complex { c: ComplexFile::from_complex(c) },
            Live::Complexes(a, b) => {
                CaseInstance::Complexes { a: ComplexFile::from_complex(a), b: ComplexFile::from_complex(b) }
            }
            Live::Hypergraph(h) => CaseInstance::Hypergraph { h: HypergraphFile::from_hypergraph(h) },
            Live::Tightness(p, q) => CaseInstance::Tightness { p: *p, q: *q },
        }
    }
}

impl CaseInstance {
    pub fn build(&self) -> Result<Live> {
        Ok(match self {
            CaseInstance::Matroid { m } => Live::Matroid(m.build()?),
            CaseInstance::Pair { m, n } => Live::Pair(m.build()?, n.build()?),
            CaseInstance::Family { matroids, v } => {
                Live::Family(matroids.iter().map(|m| m.build()).collect::<Result<_>>()?, *v)
            }
            CaseInstance::Complex { c } => Live::Complex(c.build()?),
            CaseInstance::Complexes { a, b } => Live::Complexes(a.build()?, b.build()?),
            CaseInstance::Hypergraph { h } => Live::Hypergraph(h.build()?),
            CaseInstance::Tightness { p, q } => Live::Tightness(*p, *q),
        })
    }
}

/// Extra parameters of a case.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct Case {
    pub id: String,
    pub provenance: String,
    pub live: Live,
    pub params: CaseParams,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub id: String,
    pub provenance: String,
    pub passed: bool,
    pub tight: bool,
    /// Values of both sides and the slack, as reported by the check.
    pub values: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Everything needed to rerun one failing case.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplayBundle {
    pub suite: String,
    pub case_id: String,
    pub provenance: String,
    pub seed: u64,
    pub field: String,
    pub limits: Limits,
    pub params: CaseParams,
    pub instance: CaseInstance,
    pub result: CaseResult,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub field: String,
    pub cases: Vec<CaseResult>,
    pub failures: Vec<ReplayBundle>,
    /// Cases not run because an earlier failure aborted the suite.
    pub skipped: usize,
    pub tight_cases: usize,
    pub wall_time_ms: u128,
    pub passed: bool,
}

impl VerificationReport {
    /// One JSON object per case, then a summary object.
    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            out.push_str(&serde_json::to_string(c).expect("serializable"));
            out.push('\n');
        }
        let summary = serde_json::json!({
            "suite": self.suite,
            "seed": self.seed,
            "field": self.field,
            "cases": self.cases.len(),
            "failures": self.failures.len(),
            "skipped": self.skipped,
            "tight": self.tight_cases,
            "wall_time_ms": self.wall_time_ms,
            "passed": self.passed,
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<18} {:>7} {:>7} {:>7} {:>8} {:>9}  status", "suite", "cases", "failed", "tight", "skipped", "time(ms)");
        let _ = writeln!(
            out,
            "{:<18} {:>7} {:>7} {:>7} {:>8} {:>9}  {}",
            self.suite,
            self.cases.len(),
            self.failures.len(),
            self.tight_cases,
            self.skipped,
            self.wall_time_ms,
            if self.passed { "ok" } else { "FAILED" }
        );
        for f in &self.failures {
            let _ = writeln!(
                out,
                "  failed {} ({}): {}",
                f.case_id,
                f.provenance,
                f.result.error.as_deref().unwrap_or("inequality does not hold")
            );
        }
        out
    }
}
