//! Batch execution and report serialization.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::catalog::Catalog;
use crate::checks::{CheckOutcome, Registry, Verdict};
use crate::error::AppError;
use crate::scenario::{prepare, scenarios_sha256, validate, Scenario, Settings};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INCONSISTENT: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub verdict: Verdict,
    pub detail: String,
    pub dims: Vec<usize>,
    pub millis: u64,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioReport {
    pub id: String,
    pub group: String,
    pub p: u32,
    pub group_order: usize,
    pub p_group: String,
    pub p_group_order: usize,
    pub ambient_sub_order: usize,
    pub max_degree: usize,
    pub results: Vec<CheckResult>,
}

impl ScenarioReport {
    pub fn result(&self, check: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.check == check)
    }

    fn count(&self, v: Verdict) -> usize {
        self.results.iter().filter(|r| r.verdict == v).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub id: String,
    pub checks: usize,
    pub inconsistent: usize,
    pub cap_exceeded: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReport {
    pub version: String,
    pub catalog_sha256: String,
    pub scenarios_sha256: String,
    pub scenarios: Vec<ScenarioReport>,
    pub summary: Vec<SummaryRow>,
}

impl BatchReport {
    pub fn scenario(&self, id: &str) -> Option<&ScenarioReport> {
        self.scenarios.iter().find(|s| s.id == id)
    }

    /// 0 when no check found an inconsistency or failed outright.
    pub fn exit_code(&self) -> i32 {
        let bad = self
            .summary
            .iter()
            .any(|r| r.inconsistent > 0 || r.errors > 0);
        if bad {
            EXIT_INCONSISTENT
        } else {
            EXIT_OK
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Columns: scenario_id, check, verdict, detail, dims, millis.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["scenario_id", "check", "verdict", "detail", "dims", "millis"])
            .expect("in-memory write");
        for s in &self.scenarios {
            for r in &s.results {
                let dims = r
                    .dims
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(";");
                w.write_record([
                    s.id.as_str(),
                    r.check.as_str(),
                    r.verdict.as_str(),
                    r.detail.as_str(),
                    dims.as_str(),
                    r.millis.to_string().as_str(),
                ])
                .expect("in-memory write");
            }
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
    }
}

/// Runs every requested check of one scenario. Check failures are recorded,
/// never propagated; only invalid input is an error.
pub fn run_scenario(
    scenario: &Scenario,
    catalog: &Catalog,
    registry: &Registry,
    settings: &Settings,
) -> Result<ScenarioReport, AppError> {
    let ctx = prepare(scenario, catalog, settings)?;
    let mut results = Vec::new();
    for name in &scenario.checks {
        let check = registry.get(name).ok_or_else(|| AppError::UnknownCheck {
            scenario: scenario.id.clone(),
            check: name.clone(),
        })?;
        let start = Instant::now();
        let outcome: CheckOutcome = check.run(&ctx).unwrap_or_else(|e| e.into_outcome());
        let millis = if settings.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        results.push(CheckResult {
            check: name.clone(),
            verdict: outcome.verdict,
            detail: outcome.detail,
            dims: outcome.dims,
            millis,
            data: outcome.data,
        });
    }
    Ok(ScenarioReport {
        id: scenario.id.clone(),
        group: scenario.group.clone(),
        p: scenario.p,
        group_order: ctx.group.order(),
        p_group: ctx.s.to_string(),
        p_group_order: ctx.s.order(),
        ambient_sub_order: ctx.h.order(),
        max_degree: ctx.max_degree,
        results,
    })
}

/// Validates all scenarios, then runs them on `jobs` threads (0 = rayon's
/// default). Report order follows input order.
pub fn run_batch(
    scenarios: &[Scenario],
    catalog: &Catalog,
    registry: &Registry,
    settings: &Settings,
    jobs: usize,
) -> Result<BatchReport, AppError> {
    validate(scenarios, catalog, registry)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool");
    let reports = pool.install(|| {
        scenarios
            .par_iter()
            .map(|s| run_scenario(s, catalog, registry, settings))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let summary = reports
        .iter()
        .map(|r| SummaryRow {
            id: r.id.clone(),
            checks: r.results.len(),
            inconsistent: r.count(Verdict::Inconsistent),
            cap_exceeded: r.count(Verdict::CapExceeded),
            errors: r.count(Verdict::Error),
        })
        .collect();
    Ok(BatchReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        catalog_sha256: catalog.sha256(),
        scenarios_sha256: scenarios_sha256(scenarios),
        scenarios: reports,
        summary,
    })
}
