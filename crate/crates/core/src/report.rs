//! Experiment configuration and deterministic JSON / CSV reports.
//!
//! A report is a hashable body (version, config, checks) plus a footer of
//! wall times. Identical configurations give byte-identical bodies.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::image::DEFAULT_ELEMENT_BUDGET;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Anchor strings a check may carry.
pub const ANCHORS: &[&str] = &[
    "Classical relations",
    "Virtual relations",
    "Mixed relations",
    "verified through direct matrix computation",
    "commutative exactly when m=1,2",
    "B_n[2]=P_n",
    "vB_n[2]=vP_n",
    "vB_n ≅ vB_n[2]⋊(vB_n/vB_n[2])",
    "must contain a classical crossing",
    "divisible by lcm(ℓ,m)",
    "σ_i^m ∈ B_n[m]",
    "if and only if m=2 and ℓ is odd",
    "2a+ℓb=1",
    "det(ρ_v(σ_i))=1 and det(ρ_v(τ_i))=−1",
    "factors through the quotient",
    "the infinite Dihedral group",
    "as long as m≠2",
    "is an injective group homomorphism",
    "the following short exact sequence",
    "ker(r_m∘ρ_v)",
    "⟨⟨στστ, σ^m⟩⟩",
    "is infinite index in vB_2",
    "must be order 2",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?} (json, csv)"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Csv => "csv",
        })
    }
}

/// Bounds for the verification suites. The output path is not echoed into
/// reports, so a report does not depend on where it is written.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub m_min: u64,
    pub m_max: u64,
    /// Largest odd level for the Bezout decompositions.
    pub l_max: u64,
    pub samples: usize,
    /// Constructed members and random words per lcm check.
    pub constructed: usize,
    /// Random kernel words per certificate check.
    pub certificates: usize,
    pub exhaustive_len_n2: usize,
    pub exhaustive_len_n3: usize,
    pub sample_len: usize,
    pub budget: u64,
    pub format: OutputFormat,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 0,
            n_min: 2,
            n_max: 5,
            m_min: 1,
            m_max: 12,
            l_max: 15,
            samples: 10_000,
            constructed: 1_000,
            certificates: 500,
            exhaustive_len_n2: 8,
            exhaustive_len_n3: 6,
            sample_len: 20,
            budget: DEFAULT_ELEMENT_BUDGET,
            format: OutputFormat::Json,
            output: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.n_min < 2 || self.n_max < self.n_min {
            return bad(format!("strand range {}..={} must satisfy 2 <= n_min <= n_max", self.n_min, self.n_max));
        }
        if self.m_min < 1 || self.m_max < self.m_min {
            return bad(format!("modulus range {}..={} must satisfy 1 <= m_min <= m_max", self.m_min, self.m_max));
        }
        if self.l_max < 1 {
            return bad("l_max must be positive".into());
        }
        if self.samples == 0 || self.constructed == 0 || self.certificates == 0 || self.sample_len == 0 {
            return bad("sample counts and lengths must be positive".into());
        }
        if self.exhaustive_len_n2 == 0 || self.exhaustive_len_n3 == 0 {
            return bad("exhaustive lengths must be positive".into());
        }
        if self.budget == 0 {
            return bad("budget must be positive".into());
        }
        Ok(())
    }

    pub fn strands(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min..=self.n_max
    }

    pub fn moduli(&self) -> std::ops::RangeInclusive<u64> {
        self.m_min..=self.m_max
    }

    /// Exhaustive length bound for `n` strands: zero (identity only) beyond three.
    pub fn exhaustive_len(&self, n: usize) -> usize {
        match n {
            2 => self.exhaustive_len_n2,
            3 => self.exhaustive_len_n3,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: &'static str,
    pub status: Status,
    pub evidence: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct Footer {
    /// Seconds per check id.
    pub timings: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub config: ExperimentConfig,
    pub checks: Vec<Check>,
    pub footer: Footer,
}

#[derive(Serialize)]
struct Body<'a> {
    version: &'a str,
    config: &'a ExperimentConfig,
    checks: &'a [Check],
}

#[derive(Serialize)]
struct CsvRow<'a> {
    id: &'a str,
    anchor: &'a str,
    status: Status,
    counterexample: &'a str,
}

impl Report {
    pub fn new(config: ExperimentConfig) -> Self {
        Report { version: TOOL_VERSION.to_string(), config, checks: Vec::new(), footer: Footer::default() }
    }

    pub fn push(&mut self, check: Check, seconds: f64) {
        self.footer.timings.insert(check.id.clone(), seconds);
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    /// The deterministic part: version, config and checks.
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&Body { version: &self.version, config: &self.config, checks: &self.checks })
            .expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row per check; evidence is left to the JSON form.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        for c in &self.checks {
            writer
                .serialize(CsvRow {
                    id: &c.id,
                    anchor: c.anchor,
                    status: c.status,
                    counterexample: c.counterexample.as_deref().unwrap_or(""),
                })
                .map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::InvalidArgument(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 fields"))
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Json => Ok(self.to_json() + "\n"),
            OutputFormat::Csv => self.to_csv(),
        }
    }

    pub fn write(&self, path: &Path, format: OutputFormat) -> Result<()> {
        std::fs::write(path, self.render(format)?)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display())))
    }
}

/// Strips the footer from a rendered JSON report, leaving the body as a value.
pub fn report_body(text: &str) -> Result<Value> {
    let mut v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("report JSON: {e}")))?;
    if let Some(obj) = v.as_object_mut() {
        obj.remove("footer");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Report {
        let mut r = Report::new(ExperimentConfig::default());
        r.push(
            Check {
                id: "a/1".into(),
                anchor: ANCHORS[0],
                status: Status::Pass,
                evidence: json!({"k": 1}),
                counterexample: None,
            },
            0.5,
        );
        r.push(
            Check {
                id: "b/2".into(),
                anchor: "divisible by lcm(ℓ,m)",
                status: Status::Fail,
                evidence: json!({}),
                counterexample: Some("s1 t1".into()),
            },
            1.5,
        );
        r
    }

    #[test]
    fn body_excludes_footer() {
        let mut r = sample();
        let body = r.body_json();
        assert!(!body.contains("footer"));
        r.footer.timings.insert("a/1".into(), 99.0);
        assert_eq!(r.body_json(), body);
        assert_eq!(report_body(&r.to_json()).unwrap(), serde_json::from_str::<Value>(&body).unwrap());
        assert!(!r.passed());
        assert_eq!(r.count(Status::Fail), 1);
    }

    #[test]
    fn top_level_keys_in_schema_order() {
        let text = sample().to_json();
        let keys = ["\"version\"", "\"config\"", "\"checks\"", "\"footer\""];
        let pos: Vec<usize> = keys.iter().map(|k| text.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
        assert!(!text.contains("\"output\""));
        assert!(!text.contains("counterexample\": null"));
    }

    #[test]
    fn csv_quotes_commas() {
        let csv = sample().to_csv().unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "id,anchor,status,counterexample");
        assert_eq!(lines[1], "a/1,Classical relations,pass,");
        assert_eq!(lines[2], "b/2,\"divisible by lcm(ℓ,m)\",fail,s1 t1");
    }

    #[test]
    fn config_validation() {
        assert!(ExperimentConfig::default().validate().is_ok());
        let bad = ExperimentConfig { n_min: 1, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = ExperimentConfig { m_min: 5, m_max: 4, ..Default::default() };
        assert!(bad.validate().is_err());
        let bad = ExperimentConfig { samples: 0, ..Default::default() };
        assert!(bad.validate().is_err());
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
