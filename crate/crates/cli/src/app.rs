use std::path::PathBuf;

use anorm_core::expr_io::{emit_report, parse_job_with, GrowthSpec, JobFile, OutputMode, Task};
use anorm_core::groebner::Limits;
use anorm_core::Error;
use clap::{Args, Parser, Subcommand};

use crate::runner::{exit_code, run_tasks, status_of, RunConfig};
use crate::selftest::{bundled_cases, load_cases, run_selftest};

#[derive(Debug, Parser)]
#[command(name = "anorm", version, about = "Exact certificates on affine algebraic varieties")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Emit reports as a JSON array.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for frame search and growth sampling [default: 0].
    #[arg(long, global = true, env = "ANORM_SEED")]
    pub seed: Option<u64>,
    /// Critical-pair cap for each Gröbner computation.
    #[arg(long, global = true, default_value_t = 50_000)]
    pub max_pairs: usize,
    /// Coefficient bit-size cap for each Gröbner computation.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_bits: u64,
    /// Relative residual accepted for numerical fiber points.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol: f64,
    /// Only run tasks of this kind or naming this object.
    #[arg(long, global = true)]
    pub filter: Option<String>,
    /// Directory for certificate files.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every task of a job file.
    Run { job: PathBuf },
    /// Universal denominators of the job's varieties.
    Denominator {
        job: PathBuf,
        #[arg(long)]
        variety: Option<String>,
    },
    /// Write functions as R/Q over their variety.
    Represent {
        job: PathBuf,
        #[arg(long)]
        function: Option<String>,
    },
    /// Build graph ideals of a-normalisations.
    Normalize {
        job: PathBuf,
        #[arg(long)]
        variety: Option<String>,
        #[arg(long)]
        generators: Option<String>,
    },
    /// Nullstellensatz certificates.
    Nullsatz { job: PathBuf },
    /// Growth exponent estimates.
    Growth {
        job: PathBuf,
        #[arg(long)]
        function: Option<String>,
    },
    /// Growth sandwich checks.
    Check { job: PathBuf },
    /// Run the bundled regression corpus.
    Selftest {
        /// Read `<case>.job` and `<case>.golden.json` from this directory instead.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

impl GlobalArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            json: self.json,
            seed: self.seed.unwrap_or(0),
            limits: Limits {
                max_pairs: self.max_pairs,
                max_bits: self.max_bits,
            },
            tol: self.tol,
            filter: self.filter.clone(),
            out: self.out.clone(),
        }
    }
}

pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

fn input_error(msg: String) -> Outcome {
    Outcome {
        stdout: String::new(),
        stderr: format!("anorm: {msg}\n"),
        code: 2,
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    let cfg = cli.global.config();
    let mode = if cfg.json { OutputMode::Json } else { OutputMode::Text };
    if let Command::Selftest { corpus } = &cli.command {
        let cases = match corpus {
            Some(dir) => match load_cases(dir) {
                Ok(c) => c,
                Err(e) => return input_error(format!("{}: {e}", dir.display())),
            },
            None => bundled_cases(),
        };
        let summary = run_selftest(&cases, &cfg);
        let stdout = match mode {
            OutputMode::Json => serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n",
            OutputMode::Text => summary.text(),
        };
        return Outcome {
            stdout,
            stderr: String::new(),
            code: if summary.passed { 0 } else { 1 },
        };
    }

    let path = job_path(&cli.command);
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return input_error(format!("{}: {e}", path.display())),
    };
    let mut job = match parse_job_with(&text, &cfg.job_options()) {
        Ok(j) => j,
        // declarations can already hit computation caps
        Err(e) => {
            let sep = if matches!(e, Error::Parse { .. }) { ":" } else { ": " };
            return Outcome {
                code: status_of(&e).exit_code(),
                ..input_error(format!("{}{sep}{e}", path.display()))
            };
        }
    };
    if let Err(msg) = select(&mut job, &cli.command, cli.global.seed.is_some()) {
        return input_error(msg);
    }
    let reports = run_tasks(&job, &cfg);
    Outcome {
        stdout: emit_report(&reports, mode),
        stderr: String::new(),
        code: exit_code(&reports),
    }
}

fn job_path(cmd: &Command) -> &PathBuf {
    match cmd {
        Command::Run { job }
        | Command::Denominator { job, .. }
        | Command::Represent { job, .. }
        | Command::Normalize { job, .. }
        | Command::Nullsatz { job }
        | Command::Growth { job, .. }
        | Command::Check { job } => job,
        Command::Selftest { .. } => unreachable!("selftest has no job file"),
    }
}

/// Narrows the job to the subcommand's task kind. A named subject with no
/// matching task gets a task synthesised for it.
fn select(job: &mut JobFile, cmd: &Command, seed_given: bool) -> Result<(), String> {
    let keep = |job: &mut JobFile, kind: &str, subject: Option<&str>| {
        job.tasks
            .retain(|t| t.kind() == kind && subject.is_none_or(|s| t.subjects().contains(&s)));
    };
    match cmd {
        Command::Run { .. } | Command::Selftest { .. } => {}
        Command::Denominator { variety, .. } => {
            keep(job, "denominator", variety.as_deref());
            if let Some(v) = variety {
                require_variety(job, v)?;
                if job.tasks.is_empty() {
                    job.tasks.push(Task::Denominator {
                        variety: v.clone(),
                        seed: None,
                    });
                }
            }
            if seed_given {
                for t in &mut job.tasks {
                    if let Task::Denominator { seed, .. } = t {
                        *seed = None;
                    }
                }
            }
        }
        Command::Represent { function, .. } => {
            keep(job, "represent", function.as_deref());
            if let Some(f) = function {
                let variety = job
                    .function(f)
                    .ok_or_else(|| format!("undeclared function `{f}`"))?
                    .variety
                    .clone();
                if job.tasks.is_empty() {
                    job.tasks.push(Task::Represent {
                        function: f.clone(),
                        variety,
                    });
                }
            }
        }
        Command::Normalize { variety, generators, .. } => {
            keep(job, "normalize", variety.as_deref());
            if let Some(g) = generators {
                job.tasks.retain(|t| t.subjects().contains(&g.as_str()));
            }
            if let (Some(v), Some(g)) = (variety, generators) {
                require_variety(job, v)?;
                if job.generators(g).is_none() {
                    return Err(format!("undeclared generator list `{g}`"));
                }
                if job.tasks.is_empty() {
                    job.tasks.push(Task::Normalize {
                        variety: v.clone(),
                        generators: g.clone(),
                    });
                }
            }
        }
        Command::Nullsatz { .. } => keep(job, "nullsatz", None),
        Command::Growth { function, .. } => {
            keep(job, "growth", function.as_deref());
            if let Some(f) = function {
                if job.function(f).is_none() {
                    return Err(format!("undeclared function `{f}`"));
                }
                if job.tasks.is_empty() {
                    job.tasks.push(Task::Growth {
                        function: f.clone(),
                        spec: GrowthSpec::default(),
                    });
                }
            }
            if seed_given {
                for t in &mut job.tasks {
                    if let Task::Growth { spec, .. } = t {
                        spec.seed = None;
                    }
                }
            }
        }
        Command::Check { .. } => keep(job, "check", None),
    }
    Ok(())
}

fn require_variety(job: &JobFile, name: &str) -> Result<(), String> {
    match job.variety(name) {
        Some(_) => Ok(()),
        None => Err(format!("undeclared variety `{name}`")),
    }
}
