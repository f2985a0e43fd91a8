//! Bundled regression corpus. Each case is a job file plus a golden file
//! listing the expected report of every task; a golden entry only pins the
//! keys it mentions.

use std::path::Path;

use anorm_core::expr_io::{parse_job_with, Report};
use serde::Serialize;
use serde_json::Value;

use crate::runner::{matches_filter, run_tasks, RunConfig};

pub struct Case {
    pub name: String,
    pub job: String,
    pub golden: String,
}

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name,
            include_str!(concat!("../corpus/", $name, ".job")),
            include_str!(concat!("../corpus/", $name, ".golden.json")))),*]
    };
}

const BUNDLED: &[(&str, &str, &str)] = bundled!("cusp", "cusp_checks", "node", "cross", "twisted_cubic", "plane");

pub fn bundled_cases() -> Vec<Case> {
    BUNDLED
        .iter()
        .map(|&(name, job, golden)| Case {
            name: name.into(),
            job: job.into(),
            golden: golden.into(),
        })
        .collect()
}

/// Every `<name>.job` in `dir` with its `<name>.golden.json`, by name.
pub fn load_cases(dir: &Path) -> std::io::Result<Vec<Case>> {
    let mut names: Vec<String> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            let p = e.path();
            (p.extension()? == "job").then(|| p.file_stem()?.to_str().map(String::from))?
        })
        .collect();
    names.sort();
    names
        .into_iter()
        .map(|name| {
            let job = std::fs::read_to_string(dir.join(format!("{name}.job")))?;
            // a missing golden file is reported as a case failure, not an io error
            let golden = std::fs::read_to_string(dir.join(format!("{name}.golden.json"))).unwrap_or_default();
            Ok(Case { name, job, golden })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseResult {
    pub case: String,
    pub passed: bool,
    pub failures: Vec<String>,
    pub reports: Vec<Report>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub passed: bool,
    pub cases: Vec<CaseResult>,
}

impl Summary {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {} ({} tasks)\n", c.case, c.reports.len()));
            for f in &c.failures {
                out.push_str(&format!("  {f}\n"));
            }
        }
        let failed = self.cases.iter().filter(|c| !c.passed).count();
        out.push_str(&format!("{} cases, {failed} failed\n", self.cases.len()));
        out
    }
}

pub fn run_selftest(cases: &[Case], cfg: &RunConfig) -> Summary {
    let results: Vec<CaseResult> = cases.iter().filter_map(|c| run_case(c, cfg)).collect();
    Summary {
        passed: results.iter().all(|r| r.passed),
        cases: results,
    }
}

/// `None` when the filter leaves the case without tasks.
fn run_case(case: &Case, cfg: &RunConfig) -> Option<CaseResult> {
    let fail = |msg: String| CaseResult {
        case: case.name.clone(),
        passed: false,
        failures: vec![msg],
        reports: Vec::new(),
    };
    let job = match parse_job_with(&case.job, &cfg.job_options()) {
        Ok(job) => job,
        Err(e) => return Some(fail(format!("job does not parse: {e}"))),
    };
    if !job.tasks.iter().any(|t| matches_filter(t, cfg.filter.as_deref())) {
        return None;
    }
    let golden: Value = match serde_json::from_str(&case.golden) {
        Ok(v) => v,
        Err(e) => return Some(fail(format!("golden file for `{}` is unreadable: {e}", case.name))),
    };
    let Some(expect) = golden.get("expect").and_then(Value::as_array) else {
        return Some(fail(format!("golden file for `{}` has no `expect` array", case.name)));
    };
    let reports = run_tasks(&job, cfg);
    let mut failures = Vec::new();
    for report in &reports {
        let Some(want) = expect.iter().find(|e| e.get("task").and_then(Value::as_str) == Some(report.task.as_str())) else {
            failures.push(format!("{}: no golden entry", report.task));
            continue;
        };
        let got = serde_json::to_value(report).expect("report serializes");
        if let Err(path) = subset_match(want, &got, "") {
            failures.push(format!("{}: mismatch at {path}", report.task));
        }
    }
    Some(CaseResult {
        case: case.name.clone(),
        passed: failures.is_empty(),
        failures,
        reports,
    })
}

/// Every key of `want` must be present in `got` with a matching value.
/// Arrays match elementwise and must have equal length; numbers match to
/// a relative 1e-9.
pub fn subset_match(want: &Value, got: &Value, path: &str) -> Result<(), String> {
    match (want, got) {
        (Value::Object(w), Value::Object(g)) => {
            for (k, wv) in w {
                let p = format!("{path}/{k}");
                match g.get(k) {
                    Some(gv) => subset_match(wv, gv, &p)?,
                    None => return Err(p),
                }
            }
            Ok(())
        }
        (Value::Array(w), Value::Array(g)) if w.len() == g.len() => w
            .iter()
            .zip(g)
            .enumerate()
            .try_for_each(|(i, (wv, gv))| subset_match(wv, gv, &format!("{path}/{i}"))),
        (Value::Number(w), Value::Number(g)) => {
            let (w, g) = (w.as_f64().unwrap_or(f64::NAN), g.as_f64().unwrap_or(f64::NAN));
            if (w - g).abs() <= 1e-9 * w.abs().max(g.abs()).max(1.0) {
                Ok(())
            } else {
                Err(path.to_string())
            }
        }
        (w, g) if w == g => Ok(()),
        _ => Err(if path.is_empty() { "/".into() } else { path.to_string() }),
    }
}
