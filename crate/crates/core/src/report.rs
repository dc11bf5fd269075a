//! Serializable outcomes and export formats for the CLI.
//!
//! Polynomial and series coefficients are serialized as decimal strings so
//! that reports stay exact and byte-stable regardless of magnitude.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::poly::IntPolynomial;
use crate::series::{IdentityCheck, TruncatedSeries};

/// Outcome of one named exhaustive check.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Number of instances examined.
    pub checked: usize,
    pub pass: bool,
    /// Description of the first violation, when failing.
    pub detail: Option<String>,
}

impl CheckReport {
    pub fn passed(name: &str, checked: usize) -> Self {
        CheckReport {
            name: name.to_string(),
            checked,
            pass: true,
            detail: None,
        }
    }

    pub fn failed(name: &str, checked: usize, detail: String) -> Self {
        CheckReport {
            name: name.to_string(),
            checked,
            pass: false,
            detail: Some(detail),
        }
    }
}

pub fn coeffs_to_strings(coeffs: &[BigInt]) -> Vec<String> {
    coeffs.iter().map(|c| c.to_string()).collect()
}

pub fn series_to_strings(s: &TruncatedSeries) -> Vec<String> {
    coeffs_to_strings(s.coeffs())
}

pub fn poly_to_strings(p: &IntPolynomial) -> Vec<String> {
    coeffs_to_strings(p.coeffs())
}

/// Report for the series identity `R(u) * P_*(u) = P(u^2)`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct VerifyReport {
    pub preset: Option<String>,
    pub star: Option<String>,
    pub order: usize,
    pub ball: u32,
    pub p: Vec<String>,
    pub p_star: Vec<String>,
    pub r: Vec<String>,
    pub residual: Vec<String>,
    pub pass: bool,
    pub division_pass: bool,
    /// Exact polynomial identity for fully enumerated finite groups.
    pub cleared_pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckReport>>,
    /// Unix epoch seconds; omitted when timestamps are suppressed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<u64>,
}

impl VerifyReport {
    pub fn from_identity_check(
        check: &IdentityCheck,
        preset: Option<String>,
        star: Option<String>,
        ball: u32,
    ) -> Self {
        VerifyReport {
            preset,
            star,
            order: check.order,
            ball,
            p: series_to_strings(&check.p),
            p_star: series_to_strings(&check.p_star),
            r: series_to_strings(&check.r),
            residual: series_to_strings(&check.residual),
            pass: check.pass,
            division_pass: check.division_pass,
            cleared_pass: check.cleared_pass,
            checks: None,
            timestamp: None,
        }
    }

    /// Overall verdict including any attached checks.
    pub fn all_pass(&self) -> bool {
        self.pass
            && self.division_pass
            && self.cleared_pass.unwrap_or(true)
            && self
                .checks
                .as_ref()
                .is_none_or(|cs| cs.iter().all(|c| c.pass))
    }
}

/// One row of the twisted-involution listing.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct InvolutionRow {
    pub word: Vec<u8>,
    pub length: u32,
    pub phi: u32,
}

/// One entry of the polynomial table export.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TableRow {
    pub z_word: Vec<u8>,
    pub y_word: Vec<u8>,
    pub coeffs: Vec<String>,
}

fn word_field(word: &[u8]) -> String {
    word.iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join("-")
}

pub fn involutions_csv(rows: &[InvolutionRow]) -> String {
    let mut out = String::from("word,length,phi\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", word_field(&r.word), r.length, r.phi));
    }
    out
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("z_word,y_word,coeffs\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{}\n",
            word_field(&r.z_word),
            word_field(&r.y_word),
            r.coeffs.join(" ")
        ));
    }
    out
}

/// CSV dump of series coefficients, one labeled series per row.
pub fn series_csv(named: &[(&str, &TruncatedSeries)]) -> String {
    let mut out = String::from("series,coeffs\n");
    for (name, s) in named {
        out.push_str(&format!("{},{}\n", name, series_to_strings(s).join(" ")));
    }
    out
}
