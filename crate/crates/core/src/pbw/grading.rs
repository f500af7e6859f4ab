use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::elem::PBWElem;
use crate::error::{Error, Result};

/// Weights of `x`, `y`, `z`; `w_z = w_x + w_y` keeps the bracket graded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradingSpec {
    pub label: char,
    pub weights: (i64, i64, i64),
}

impl GradingSpec {
    pub const A: GradingSpec = GradingSpec { label: 'a', weights: (-1, -1, -2) };
    pub const B: GradingSpec = GradingSpec { label: 'b', weights: (-1, -2, -3) };
    pub const C: GradingSpec = GradingSpec { label: 'c', weights: (1, 1, 2) };
    pub const D: GradingSpec = GradingSpec { label: 'd', weights: (1, 2, 3) };

    pub fn all() -> [GradingSpec; 4] {
        [GradingSpec::A, GradingSpec::B, GradingSpec::C, GradingSpec::D]
    }

    pub fn degree(&self, (l, m, n): (u32, u32, u32)) -> i64 {
        let (a, b, c) = self.weights;
        l as i64 * a + m as i64 * b + n as i64 * c
    }

    /// Weights of `(V, z)` and `(y, z)` for the commutative subfields.
    pub fn v_weights(&self) -> (i64, i64) {
        (self.weights.0 + self.weights.1, self.weights.2)
    }

    pub fn y_weights(&self) -> (i64, i64) {
        (self.weights.1, self.weights.2)
    }
}

impl FromStr for GradingSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(GradingSpec::A),
            "b" => Ok(GradingSpec::B),
            "c" => Ok(GradingSpec::C),
            "d" => Ok(GradingSpec::D),
            other => Err(Error::UnknownName(format!("grading {other}"))),
        }
    }
}

impl fmt::Display for GradingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label)
    }
}

pub fn pbw_grade_decompose(f: &PBWElem, g: &GradingSpec) -> BTreeMap<i64, PBWElem> {
    let mut out: BTreeMap<i64, PBWElem> = BTreeMap::new();
    for (k, c) in f.terms() {
        out.entry(g.degree(*k)).or_default().add_term(*k, c.clone());
    }
    out
}

/// Largest `n` with `f ∈ F_n`, where `F_n` is spanned by monomials of degree `≥ n`.
pub fn pbw_valuation(f: &PBWElem, g: &GradingSpec) -> Result<i64> {
    f.terms().map(|(k, _)| g.degree(*k)).min().ok_or(Error::ZeroElement)
}

pub fn pbw_leading(f: &PBWElem, g: &GradingSpec) -> Result<PBWElem> {
    let v = pbw_valuation(f, g)?;
    Ok(PBWElem::from_terms(f.terms().filter(|(k, _)| g.degree(**k) == v).map(|(k, c)| (*k, c.clone()))))
}

pub fn is_homogeneous(f: &PBWElem, g: &GradingSpec) -> bool {
    pbw_grade_decompose(f, g).len() <= 1
}

/// Membership in `F_n`, checked monomial by monomial.
pub fn in_filtration(f: &PBWElem, n: i64, g: &GradingSpec) -> bool {
    f.terms().all(|(k, _)| g.degree(*k) >= n)
}
