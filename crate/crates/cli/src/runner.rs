//! Executes job tasks in order and turns each outcome into a report.

use std::path::PathBuf;

use anorm_core::anormalizer::{graph_ideal, pullback_extend, ANormalisation};
use anorm_core::denominator::{check_denominator, represent, universal_denominator};
use anorm_core::expr_io::report::{
    matrix_text, CertificateJson, ExtensionEntry, Float, GrowthJson, RationalText, RepresentEntry,
};
use anorm_core::expr_io::{JobFile, JobOptions, Payload, Report, Status, Task};
use anorm_core::function::CAlgFunction;
use anorm_core::groebner::Limits;
use anorm_core::poly::MonomialOrder;
use anorm_core::growth::{check_prop52, estimate_growth, GrowthConfig};
use anorm_core::nullsatz::certificate;
use anorm_core::variety::dimension;
use anorm_core::Error;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub json: bool,
    pub seed: u64,
    pub limits: Limits,
    pub tol: f64,
    /// Task kind or declared name; tasks matching neither are skipped.
    pub filter: Option<String>,
    /// Directory receiving certificate files.
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            json: false,
            seed: 0,
            limits: Limits::default(),
            tol: 1e-6,
            filter: None,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn job_options(&self) -> JobOptions {
        JobOptions {
            limits: self.limits,
            residual_tol: self.tol,
        }
    }
}

pub fn status_of(e: &Error) -> Status {
    match e {
        Error::Parse { .. } | Error::Input(_) => Status::Input,
        Error::Limit(_) => Status::Limit,
        Error::Numeric(_) => Status::Numeric,
        Error::Verification(_) | Error::NoCertificate { .. } | Error::Internal(_) => Status::Fail,
    }
}

pub fn task_id(index: usize, task: &Task) -> String {
    format!("{}:{}", index + 1, task.kind())
}

pub fn matches_filter(task: &Task, filter: Option<&str>) -> bool {
    match filter {
        None => true,
        Some(f) => task.kind() == f || task.subjects().contains(&f),
    }
}

/// Runs the selected tasks in order; later tasks never depend on earlier
/// reports, only on the declarations.
pub fn run_tasks(job: &JobFile, cfg: &RunConfig) -> Vec<Report> {
    job.tasks
        .iter()
        .enumerate()
        .filter(|(_, t)| matches_filter(t, cfg.filter.as_deref()))
        .map(|(i, t)| run_task(job, i, t, cfg))
        .collect()
}

/// Largest exit code over the reports (0 when there are none).
pub fn exit_code(reports: &[Report]) -> i32 {
    reports.iter().map(|r| r.status.exit_code()).max().unwrap_or(0)
}

pub fn run_task(job: &JobFile, index: usize, task: &Task, cfg: &RunConfig) -> Report {
    let id = task_id(index, task);
    let mut report = Report {
        task: id.clone(),
        kind: task.kind().to_string(),
        status: Status::Ok,
        payload: None,
        residual: None,
        diagnostics: Vec::new(),
    };
    match execute(job, &id, task, cfg, &mut report) {
        Ok(payload) => report.payload = Some(payload),
        Err(e) => {
            report.status = status_of(&e);
            report.diagnostics.push(e.to_string());
        }
    }
    report
}

fn variety<'a>(job: &'a JobFile, name: &str) -> Result<&'a Arc<anorm_core::variety::VarietyModel>, Error> {
    job.variety(name)
        .ok_or_else(|| Error::Input(format!("undeclared variety `{name}`")))
}

fn function<'a>(job: &'a JobFile, name: &str) -> Result<&'a CAlgFunction, Error> {
    job.function(name)
        .ok_or_else(|| Error::Input(format!("undeclared function `{name}`")))
}

fn normalisation(job: &JobFile, variety_name: &str, generators: &str) -> Result<ANormalisation, Error> {
    let a = variety(job, variety_name)?;
    let gens = job
        .generators(generators)
        .ok_or_else(|| Error::Input(format!("undeclared generator list `{generators}`")))?;
    graph_ideal(a, &gens.functions)
}

fn growth_config(spec: &anorm_core::expr_io::GrowthSpec, seed: u64) -> GrowthConfig {
    let d = GrowthConfig::default();
    GrowthConfig {
        rmin: spec.rmin.unwrap_or(d.rmin),
        rmax: spec.rmax.unwrap_or(d.rmax),
        decades: spec.decades.unwrap_or(d.decades),
        samples: spec.samples.unwrap_or(d.samples),
        seed: spec.seed.unwrap_or(seed),
        ..d
    }
}

fn execute(job: &JobFile, id: &str, task: &Task, cfg: &RunConfig, report: &mut Report) -> Result<Payload, Error> {
    match task {
        Task::Denominator { variety: name, seed } => {
            let a = variety(job, name)?;
            let seed = seed.unwrap_or(cfg.seed);
            let d = universal_denominator(a, seed)?;
            let check = check_denominator(a, &d, &[])?;
            if !check.q_nonvanishing {
                report.status = Status::Fail;
            }
            Ok(Payload::Denominator {
                variety: name.clone(),
                seed,
                frame: matrix_text(&d.frame.matrix),
                covering_number: d.covering_number(),
                unitary: d.unitary.as_ref().map(|p| p.to_string()),
                q: d.q.to_string(),
                q_nonvanishing: check.q_nonvanishing,
                tests: check
                    .results
                    .iter()
                    .map(|r| RepresentEntry {
                        function: r.function.clone(),
                        r: r.r.as_ref().map(|p| p.to_string()),
                        detail: r.detail.clone(),
                    })
                    .collect(),
            })
        }
        Task::Represent { function: fname, variety: vname } => {
            let a = variety(job, vname)?;
            let f = function(job, fname)?;
            let d = universal_denominator(a, cfg.seed)?;
            match represent(f, a, &d) {
                Ok(r) => Ok(Payload::Represent {
                    function: fname.clone(),
                    variety: vname.clone(),
                    q: d.q.to_string(),
                    r: r.to_string(),
                    verified: true,
                }),
                Err(e @ Error::NoCertificate { .. }) => {
                    // what is left of r·Q modulo ⟨s⟩ + I(A)
                    let ideal = a.ideal().with_leading(std::slice::from_ref(&f.denominator))?;
                    let rest = ideal.normal_form(&(&f.numerator * &d.q))?;
                    report.residual = Some(rest.to_string());
                    Err(e)
                }
                Err(e) => Err(e),
            }
        }
        Task::Normalize { variety: vname, generators } => {
            let n = normalisation(job, vname, generators)?;
            let basis = n.graph_ideal().reduced_basis(&MonomialOrder::GRevLex)?;
            let mut instances = Vec::new();
            for f in job.functions.iter().filter(|f| &f.variety == vname) {
                let extension = match pullback_extend(f, &n) {
                    Ok(t) => Some(t.to_string()),
                    Err(Error::NoCertificate { .. }) => None,
                    Err(e) => return Err(e),
                };
                instances.push(ExtensionEntry {
                    function: f.name.clone(),
                    extension,
                });
            }
            Ok(Payload::Normalize {
                variety: vname.clone(),
                generators: n.generators.iter().map(RationalText::from).collect(),
                vars: n.ring().vars().to_vec(),
                graph_ideal: basis.iter().map(|p| p.to_string()).collect(),
                projects_onto_base: true,
                dimension: dimension(n.graph_ideal())?,
                instances,
            })
        }
        Task::Nullsatz {
            variety: vname,
            generators,
            g,
            members,
        } => {
            let n = normalisation(job, vname, generators)?;
            let cert = certificate(g, members, &n)?;
            let json = CertificateJson::new(&cert, true);
            if let Some(dir) = &cfg.out {
                write_certificate(dir, id, &json)?;
            }
            Ok(Payload::Nullsatz {
                variety: vname.clone(),
                g: RationalText::from(g),
                members: members.iter().map(RationalText::from).collect(),
                certificate: json,
            })
        }
        Task::Growth { function: fname, spec } => {
            let f = function(job, fname)?;
            let a = variety(job, &f.variety)?;
            let gcfg = growth_config(spec, cfg.seed);
            let e = estimate_growth(f, a, &gcfg)?;
            if e.snapped.is_none() {
                report
                    .diagnostics
                    .push("slope did not settle on a rational with small denominator".into());
            }
            Ok(Payload::Growth {
                function: fname.clone(),
                variety: a.name().to_string(),
                estimate: GrowthJson::from(&e),
            })
        }
        Task::CheckProp52 { function: fname, generators } => {
            let f = function(job, fname)?;
            let n = normalisation(job, &f.variety, generators)?;
            let gcfg = GrowthConfig {
                seed: cfg.seed,
                ..GrowthConfig::default()
            };
            let c = check_prop52(f, &n, &gcfg)?;
            if !c.holds() {
                report.status = Status::Fail;
                report
                    .diagnostics
                    .push("growth sandwich violated beyond the tolerance".into());
            }
            Ok(Payload::Prop52 {
                function: fname.clone(),
                b_f: GrowthJson::from(&c.b_f),
                b_fhat: GrowthJson::from(&c.b_fhat),
                b_h: c.b_h.iter().map(GrowthJson::from).collect(),
                epsilon: Float(c.epsilon),
                upper_holds: c.upper_holds,
                lower_holds: c.lower_holds,
            })
        }
    }
}

fn write_certificate(dir: &std::path::Path, id: &str, cert: &CertificateJson) -> Result<(), Error> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Error::Input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(format!("{}.cert.json", id.replace(':', "-")));
    let mut text = serde_json::to_string_pretty(cert).expect("certificate serializes");
    text.push('\n');
    std::fs::write(&path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}
