//! JSON wire formats: configuration input (also the catalog output) and the
//! analysis report.
//!
//! Exact values use the field text encoding: a rational is `"p"` or `"p/q"`,
//! an irrational value is `{"a": "p/q", "b": "p/q", "m": 5}`. Struct field order
//! fixes key order, so identical inputs serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{CatalogEntry, Expected};
use crate::error::{Error, Result};
use crate::field::{square_free_part, QuadExt, QuadText};
use crate::geometry::{Configuration, PointSet, SquaredDistanceMatrix};
use crate::invariants::InvariantReport;
use crate::polyspace::RankCertificate;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigKind {
    Points,
    Sdm,
}

/// On-disk configuration. Catalog metadata fields are optional and ignored by analysis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigFile {
    pub kind: ConfigKind,
    pub m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub data: Vec<Vec<QuadText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<BTreeMap<String, i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

fn radicand_of<'a>(values: impl IntoIterator<Item = &'a QuadExt>) -> u64 {
    values.into_iter().map(QuadExt::radicand).find(|&m| m != 0).unwrap_or(0)
}

fn encode_rows(rows: &[Vec<QuadExt>]) -> Vec<Vec<QuadText>> {
    rows.iter().map(|r| r.iter().map(QuadText::from).collect()).collect()
}

impl ConfigFile {
    pub fn from_configuration(cfg: &Configuration) -> Self {
        match cfg {
            Configuration::Points(x) => ConfigFile {
                kind: ConfigKind::Points,
                m: radicand_of(x.points().iter().flatten()),
                d: Some(x.dim()),
                data: encode_rows(x.points()),
                labels: x.labels().map(<[String]>::to_vec),
                name: None,
                parameters: None,
                expected: None,
            },
            Configuration::Sdm(d) => {
                let rows = d.to_rows();
                ConfigFile {
                    kind: ConfigKind::Sdm,
                    m: radicand_of(rows.iter().flatten()),
                    d: None,
                    data: encode_rows(&rows),
                    labels: None,
                    name: None,
                    parameters: None,
                    expected: None,
                }
            }
        }
    }

    pub fn from_entry(entry: &CatalogEntry) -> Self {
        let mut f = Self::from_configuration(&entry.payload);
        f.name = Some(entry.name.clone());
        f.parameters = Some(entry.parameters.clone());
        f.expected = entry.expected;
        f
    }

    /// Decodes and validates against the declared radicand.
    pub fn to_configuration(&self) -> Result<Configuration> {
        let field_m = square_free_part(self.m).1;
        let rows = self
            .data
            .iter()
            .map(|r| {
                r.iter()
                    .map(|t| {
                        let x = QuadExt::try_from(t)?;
                        match x.radicand() {
                            0 => Ok(x),
                            r if r == field_m => Ok(x),
                            r => Err(Error::Parse(format!("entry in Q(√{}) but the file declares m = {}", r, self.m))),
                        }
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        match self.kind {
            ConfigKind::Points => {
                let dim = match (self.d, rows.first()) {
                    (Some(d), _) => d,
                    (None, Some(r)) => r.len(),
                    (None, None) => 0,
                };
                let mut x = PointSet::new(dim, rows)?;
                if let Some(labels) = &self.labels {
                    x = x.with_labels(labels.clone())?;
                }
                Ok(Configuration::Points(x))
            }
            ConfigKind::Sdm => Ok(Configuration::Sdm(SquaredDistanceMatrix::new(rows)?)),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }
}

/// An exact value with a 12-significant-digit decimal rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub exact: QuadText,
    pub decimal: String,
}

impl From<&QuadExt> for ExactValue {
    fn from(x: &QuadExt) -> Self {
        Self { exact: QuadText::from(x), decimal: x.to_decimal() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdsJson {
    /// `2·N_new`
    pub required_new: u64,
    /// `2·N_legacy`
    pub required_legacy: u64,
    pub threshold_met_new: bool,
    pub threshold_met_legacy: bool,
    pub finiteness_threshold: u64,
    pub theorem_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportJson {
    pub spectrum: Vec<ExactValue>,
    pub s: usize,
    pub d: usize,
    pub n: usize,
    pub k: Vec<ExactValue>,
    pub k_integral: Vec<bool>,
    #[serde(rename = "N_new")]
    pub n_new: u64,
    #[serde(rename = "N_legacy")]
    pub n_legacy: u64,
    pub thresholds: ThresholdsJson,
    pub k_cap: Option<u64>,
    pub cap_respected: Vec<bool>,
    pub lrs_k: Option<ExactValue>,
    pub certificates: Vec<RankCertificate>,
}

impl ReportJson {
    pub fn new(r: &InvariantReport, certificates: Vec<RankCertificate>) -> Self {
        Self {
            spectrum: r.spectrum.values().iter().map(ExactValue::from).collect(),
            s: r.s,
            d: r.d,
            n: r.n_points,
            k: r.k_values.iter().map(ExactValue::from).collect(),
            k_integral: r.k_integral.clone(),
            n_new: r.n_new,
            n_legacy: r.n_legacy,
            thresholds: ThresholdsJson {
                required_new: 2 * r.n_new,
                required_legacy: 2 * r.n_legacy,
                threshold_met_new: r.threshold_met_new,
                threshold_met_legacy: r.threshold_met_legacy,
                finiteness_threshold: r.finiteness_threshold,
                theorem_consistent: r.consistent_with_theorem(),
            },
            k_cap: r.k_cap,
            cap_respected: r.cap_respected.clone(),
            lrs_k: r.lrs_k.as_ref().map(ExactValue::from),
            certificates,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text summary for terminals.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let list = |v: &[ExactValue]| v.iter().map(|x| x.decimal.clone()).collect::<Vec<_>>().join(", ");
        out.push_str(&format!("n = {}, d = {}, s = {}\n", self.n, self.d, self.s));
        out.push_str(&format!("squared distances: {}\n", list(&self.spectrum)));
        if !self.k.is_empty() {
            out.push_str(&format!("k: {}\n", list(&self.k)));
            out.push_str(&format!("k integral: {:?}\n", self.k_integral));
        }
        out.push_str(&format!(
            "N = {} (legacy {}), required n >= {} (legacy {}): {}\n",
            self.n_new,
            self.n_legacy,
            self.thresholds.required_new,
            self.thresholds.required_legacy,
            if self.thresholds.threshold_met_new { "met" } else { "not met" }
        ));
        if let Some(cap) = self.k_cap {
            out.push_str(&format!("|k_i| cap: {}\n", cap));
        }
        out.push_str(&format!("finiteness threshold: {}\n", self.thresholds.finiteness_threshold));
        for c in &self.certificates {
            out.push_str(&format!(
                "[{}] {} (rank {} vs {})\n",
                if c.pass { "pass" } else { "FAIL" },
                c.claim,
                c.achieved_rank,
                c.expected_rank
            ));
        }
        out
    }
}
