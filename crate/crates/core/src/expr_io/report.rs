//! Per-task reports and their text and JSON renderings.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::function::CAlgFunction;
use crate::growth::GrowthEstimate;
use crate::nullsatz::Certificate;
use crate::poly::rational::to_text;
use crate::poly::{Poly, RatMatrix};

/// A float written with 17 significant digits, so that JSON output is
/// bit-stable and parses back to the same value. Non-finite values are `null`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Float(pub f64);

impl Serialize for Float {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return s.serialize_none();
        }
        let text = format!("{:.16e}", self.0);
        let raw = serde_json::value::RawValue::from_string(text).map_err(serde::ser::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Float {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Float(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Input,
    Limit,
    Numeric,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Input => 2,
            Status::Limit => 3,
            Status::Numeric => 4,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Input => "input",
            Status::Limit => "limit",
            Status::Numeric => "numeric",
        }
    }
}

/// `r/s` as canonical polynomial strings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RationalText {
    pub num: String,
    pub den: String,
}

impl From<&CAlgFunction> for RationalText {
    fn from(f: &CAlgFunction) -> Self {
        RationalText {
            num: f.numerator.to_string(),
            den: f.denominator.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SnappedRational {
    pub p: i64,
    pub q: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthConfigJson {
    pub rmin: Float,
    pub rmax: Float,
    pub decades: usize,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthJson {
    pub slope: Float,
    pub snapped: Option<SnappedRational>,
    pub residual: Float,
    pub per_decade: Vec<Float>,
    pub samples_used: usize,
    pub config: GrowthConfigJson,
}

impl From<&GrowthEstimate> for GrowthJson {
    fn from(e: &GrowthEstimate) -> Self {
        GrowthJson {
            slope: Float(e.slope),
            snapped: e.snapped.as_ref().map(|r| SnappedRational {
                p: r.numer().to_i64().unwrap_or(i64::MAX),
                q: r.denom().to_i64().unwrap_or(i64::MAX),
            }),
            residual: Float(e.residual),
            per_decade: e.per_decade.iter().map(|&v| Float(v)).collect(),
            samples_used: e.samples_used,
            config: GrowthConfigJson {
                rmin: Float(e.config.rmin),
                rmax: Float(e.config.rmax),
                decades: e.config.decades,
                samples: e.config.samples,
                seed: e.config.seed,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientJson {
    pub exponent: u32,
    /// Variables of the normalisation's ambient ring.
    pub vars: Vec<String>,
    /// `w_i` for the members, then `v_j` for the graph relations.
    pub cofactors: Vec<String>,
}

/// The certificate file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub n: u32,
    pub q: Vec<RationalText>,
    pub ambient: AmbientJson,
    pub normalisation: String,
    pub verified: bool,
}

impl CertificateJson {
    pub fn new(c: &Certificate, verified: bool) -> Self {
        CertificateJson {
            n: c.n,
            q: c.q.iter().map(RationalText::from).collect(),
            ambient: AmbientJson {
                exponent: c.ambient.exponent,
                vars: c.ambient.g.ring().vars().to_vec(),
                cofactors: c.ambient.cofactors.iter().map(Poly::to_string).collect(),
            },
            normalisation: c.normalisation.clone(),
            verified,
        }
    }
}

pub fn matrix_text(m: &RatMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(to_text).collect()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentEntry {
    pub function: String,
    pub r: Option<String>,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionEntry {
    pub function: String,
    pub extension: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Payload {
    Denominator {
        variety: String,
        seed: u64,
        /// `L` with `z = L·z'`.
        frame: Vec<Vec<String>>,
        covering_number: u32,
        unitary: Option<String>,
        q: String,
        q_nonvanishing: bool,
        tests: Vec<RepresentEntry>,
    },
    Represent {
        function: String,
        variety: String,
        q: String,
        r: String,
        verified: bool,
    },
    Normalize {
        variety: String,
        generators: Vec<RationalText>,
        vars: Vec<String>,
        graph_ideal: Vec<String>,
        projects_onto_base: bool,
        dimension: usize,
        instances: Vec<ExtensionEntry>,
    },
    Nullsatz {
        variety: String,
        g: RationalText,
        members: Vec<RationalText>,
        certificate: CertificateJson,
    },
    Growth {
        function: String,
        variety: String,
        #[serde(flatten)]
        estimate: GrowthJson,
    },
    Prop52 {
        function: String,
        b_f: GrowthJson,
        b_fhat: GrowthJson,
        b_h: Vec<GrowthJson>,
        epsilon: Float,
        upper_holds: bool,
        lower_holds: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub task: String,
    pub kind: String,
    pub status: Status,
    pub payload: Option<Payload>,
    /// Canonical text of the polynomial left over by a failed identity check.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    pub diagnostics: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Text,
    Json,
}

/// Renders reports: a JSON array, or one human-readable block per report.
pub fn emit_report(reports: &[Report], mode: OutputMode) -> String {
    match mode {
        OutputMode::Json => {
            let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputMode::Text => reports.iter().map(text_block).collect(),
    }
}

fn fmt_float(f: Float) -> String {
    if f.0.is_finite() {
        format!("{:.6}", f.0)
    } else {
        "n/a".into()
    }
}

fn fmt_growth(g: &GrowthJson) -> String {
    let snapped = match &g.snapped {
        Some(s) if s.q == 1 => s.p.to_string(),
        Some(s) => format!("{}/{}", s.p, s.q),
        None => "none".into(),
    };
    format!(
        "slope {} snapped {snapped} residual {}",
        fmt_float(g.slope),
        fmt_float(g.residual)
    )
}

fn fmt_rational(r: &RationalText) -> String {
    if r.den == "1" {
        r.num.clone()
    } else {
        format!("({}) / ({})", r.num, r.den)
    }
}

fn text_block(r: &Report) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:<8} {:<12} {}", r.status.as_str().to_uppercase(), r.kind, r.task);
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "  {k:<16} {v}");
    };
    match &r.payload {
        Some(Payload::Denominator {
            variety,
            frame,
            covering_number,
            unitary,
            q,
            q_nonvanishing,
            tests,
            ..
        }) => {
            line("variety", variety.clone());
            let rows: Vec<String> = frame.iter().map(|row| format!("[{}]", row.join(", "))).collect();
            line("frame", rows.join(" "));
            line("sheets", covering_number.to_string());
            line("P", unitary.clone().unwrap_or_else(|| "none".into()));
            line("Q", q.clone());
            line("Q nonvanishing", q_nonvanishing.to_string());
            for t in tests {
                line(
                    &format!("R[{}]", t.function),
                    t.r.clone().or_else(|| t.detail.clone()).unwrap_or_default(),
                );
            }
        }
        Some(Payload::Represent { function, q, r, .. }) => {
            line("function", function.clone());
            line("Q", q.clone());
            line("R", r.clone());
        }
        Some(Payload::Normalize {
            vars,
            graph_ideal,
            projects_onto_base,
            dimension,
            instances,
            ..
        }) => {
            line("vars", vars.join(", "));
            line("graph ideal", graph_ideal.join(", "));
            line("projects onto A", projects_onto_base.to_string());
            line("dimension", dimension.to_string());
            for e in instances {
                line(
                    &format!("extends[{}]", e.function),
                    e.extension.clone().unwrap_or_else(|| "no".into()),
                );
            }
        }
        Some(Payload::Nullsatz { g, members, certificate, .. }) => {
            line("g", fmt_rational(g));
            line(
                "members",
                members.iter().map(fmt_rational).collect::<Vec<_>>().join(", "),
            );
            line("n", certificate.n.to_string());
            for (i, q) in certificate.q.iter().enumerate() {
                line(&format!("q{}", i + 1), fmt_rational(q));
            }
            line("verified", certificate.verified.to_string());
        }
        Some(Payload::Growth { function, estimate, .. }) => {
            line("function", function.clone());
            line("estimate", fmt_growth(estimate));
        }
        Some(Payload::Prop52 {
            function,
            b_f,
            b_fhat,
            b_h,
            upper_holds,
            lower_holds,
            ..
        }) => {
            line("function", function.clone());
            line("B(f)", fmt_growth(b_f));
            line("B(f_hat)", fmt_growth(b_fhat));
            for (i, h) in b_h.iter().enumerate() {
                line(&format!("B(h{})", i + 1), fmt_growth(h));
            }
            line("upper bound", upper_holds.to_string());
            line("lower bound", lower_holds.to_string());
        }
        None => {}
    }
    if let Some(res) = &r.residual {
        line("residual", res.clone());
    }
    for d in &r.diagnostics {
        line("note", d.clone());
    }
    out
}
