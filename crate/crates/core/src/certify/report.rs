use std::fmt;

use serde::{Deserialize, Serialize};

use super::words::WordKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Certified,
    Inconclusive,
    Dependent,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::Inconclusive => 2,
            Status::Dependent => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "CERTIFIED",
            Status::Inconclusive => "INCONCLUSIVE",
            Status::Dependent => "DEPENDENT",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub generators: Vec<String>,
    pub model: String,
    pub kind: WordKind,
    pub max_word_length: usize,
    pub window_low: Option<i64>,
    pub window_high: Option<i64>,
    pub word_count: usize,
    pub rank: usize,
    pub status: Status,
    /// Coefficients over the enumerated words, as `num/den`.
    pub witness: Option<Vec<String>>,
    pub elapsed_ms: u64,
    /// `sampled` (rank modulo 2^61 - 1 of sampled coefficients) or `exact`.
    pub method: String,
}

impl FreenessReport {
    /// Equal up to generator names and timing.
    pub fn same_outcome(&self, o: &FreenessReport) -> bool {
        let strip = |r: &FreenessReport| FreenessReport { generators: vec![], elapsed_ms: 0, ..r.clone() };
        strip(self) == strip(o)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> crate::Result<Self> {
        serde_json::from_str(s).map_err(|e| crate::Error::Parse(e.to_string()))
    }
}

impl fmt::Display for FreenessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {{{}}} model={} {} L={} words={} rank={}",
            self.status,
            self.generators.join(", "),
            self.model,
            self.kind,
            self.max_word_length,
            self.word_count,
            self.rank
        )?;
        if let (Some(lo), Some(hi)) = (self.window_low, self.window_high) {
            write!(f, " window=({lo}, {hi})")?;
        }
        Ok(())
    }
}
