//! Serialized output records and their JSON/CSV encodings.
//!
//! Every float is written with 17 significant digits so that parsing and
//! re-serializing reproduces the same bytes.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::value::RawValue;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot encode non-finite value {0}")]
    NonFinite(f64),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("csv output is not valid utf-8")]
    Utf8(#[from] std::string::FromUtf8Error),
    #[error("csv writer: {0}")]
    Io(#[from] std::io::Error),
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// A float that serializes as `{:.16e}` and parses back exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return Err(S::Error::custom(FormatError::NonFinite(self.0)));
        }
        let raw = RawValue::from_string(fmt_f64(self.0)).map_err(S::Error::custom)?;
        raw.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        // go through the text so the std (correctly rounded) parser is used
        let raw: Box<RawValue> = Deserialize::deserialize(d)?;
        raw.get().parse::<f64>().map(Num).map_err(D::Error::custom)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_f64(self.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorEntry {
    pub mu: u8,
    pub nu: u8,
    pub expr_text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommutatorsOutput {
    pub case: String,
    pub indices: [u8; 3],
    pub chart: String,
    pub order: u32,
    pub entries: Vec<CommutatorEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParamsOutput {
    pub a: Num,
    pub temperature: Num,
    pub omega_hat: Num,
    pub z: Num,
    pub z2: Num,
    pub z3: Num,
    pub deformation: BTreeMap<String, Num>,
}

pub const SPECTRUM_COLUMNS: [&str; 9] = [
    "omega",
    "base",
    "re_correction",
    "im_correction",
    "corrected",
    "paper_magnitude",
    "magnitude_rel_dev",
    "sign_agrees",
    "oracle_residual",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub omega: Num,
    pub base: Num,
    pub re_correction: Num,
    pub im_correction: Num,
    pub corrected: Num,
    pub paper_magnitude: Num,
    pub magnitude_rel_dev: Num,
    pub sign_agrees: bool,
    pub oracle_residual: Num,
}

impl SpectrumRow {
    fn record(&self) -> [String; 9] {
        [
            self.omega.to_string(),
            self.base.to_string(),
            self.re_correction.to_string(),
            self.im_correction.to_string(),
            self.corrected.to_string(),
            self.paper_magnitude.to_string(),
            self.magnitude_rel_dev.to_string(),
            self.sign_agrees.to_string(),
            self.oracle_residual.to_string(),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumOutput {
    pub case: String,
    pub indices: [u8; 3],
    pub params: ParamsOutput,
    pub points: Vec<SpectrumRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorOutput {
    pub terms: usize,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TwistOutput {
    pub case: String,
    pub indices: [u8; 3],
    pub chart: String,
    pub order: u32,
    pub log: OperatorOutput,
    pub factor: OperatorOutput,
    pub inverse: OperatorOutput,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricOutput {
    pub chart: String,
    pub metric: [[String; 4]; 4],
    pub g00_alternative: String,
    pub g00_matches_alternative: bool,
    pub g00_deviation: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutput {
    pub name: String,
    pub config: String,
    pub status: String,
    pub residual: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub seed: u64,
    pub order: u32,
    pub all_passed: bool,
    pub checks: Vec<CheckOutput>,
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, FormatError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn spectrum_csv(rows: &[SpectrumRow]) -> Result<String, FormatError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SPECTRUM_COLUMNS)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    let bytes = w.into_inner().map_err(|e| FormatError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes)?)
}
