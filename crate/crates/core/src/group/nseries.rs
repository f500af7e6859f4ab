use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};

use super::elem::GroupAlgElem;
use crate::error::{Error, Result};
use crate::pbw::{GradingSpec, PBWElem};
use crate::scalars::rational::binomial;
use crate::scalars::Rational;

/// N-series on `ℍ`: `series1` is `ℍ ⊇ ⟨c⟩ ⊇ 1`, `series2` is `ℍ ⊇ ⟨b, c⟩ ⊇ ⟨c⟩ ⊇ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NSeriesSpec {
    Series1,
    Series2,
}

/// Weighted degrees beyond this are not searched.
const MAX_DEGREE: i64 = 256;

impl NSeriesSpec {
    /// `(w(a), w(b), w(c))`
    pub fn weights(&self) -> (i64, i64, i64) {
        match self {
            NSeriesSpec::Series1 => (1, 1, 2),
            NSeriesSpec::Series2 => (1, 2, 3),
        }
    }

    /// The grading of `U(H)` matching the associated graded ring.
    pub fn grading(&self) -> GradingSpec {
        match self {
            NSeriesSpec::Series1 => GradingSpec::C,
            NSeriesSpec::Series2 => GradingSpec::D,
        }
    }

    /// Index of the first term of the chain dropping `a^i b^j c^k`; `None` for the identity.
    pub fn weight(&self, (i, j, k): (i64, i64, i64)) -> Option<i64> {
        match self {
            NSeriesSpec::Series1 if i != 0 || j != 0 => Some(1),
            NSeriesSpec::Series1 if k != 0 => Some(2),
            NSeriesSpec::Series2 if i != 0 => Some(1),
            NSeriesSpec::Series2 if j != 0 => Some(2),
            NSeriesSpec::Series2 if k != 0 => Some(3),
            _ => None,
        }
    }

    /// `(H_i, H_j) ⊆ H_{i+j}` on the generators `a, b, c` and their inverses.
    pub fn check_axiom(&self) -> bool {
        let gens: Vec<(i64, i64, i64)> =
            (0..3).flat_map(|n| [1i64, -1].map(|e| [(e, 0, 0), (0, e, 0), (0, 0, e)][n])).collect();
        gens.iter().all(|&g| {
            gens.iter().all(|&h| {
                let (gg, hh) = (GroupAlgElem::group(g.0, g.1, g.2), GroupAlgElem::group(h.0, h.1, h.2));
                let comm = gg.pow(-1).unwrap().mul(&hh.pow(-1).unwrap()).mul(&gg).mul(&hh);
                let key = *comm.terms().next().unwrap().0;
                match self.weight(key) {
                    None => true,
                    Some(w) => w >= self.weight(g).unwrap() + self.weight(h).unwrap(),
                }
            })
        })
    }
}

impl FromStr for NSeriesSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "series1" => Ok(NSeriesSpec::Series1),
            "series2" => Ok(NSeriesSpec::Series2),
            other => Err(Error::UnknownName(format!("N-series {other}"))),
        }
    }
}

impl fmt::Display for NSeriesSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NSeriesSpec::Series1 => write!(f, "series1"),
            NSeriesSpec::Series2 => write!(f, "series2"),
        }
    }
}

/// Degree-`d` part of `f` after `a = 1+ā, b = 1+b̄, c = 1+c̄`, read through `ā ↦ x, b̄ ↦ y, c̄ ↦ z`.
pub fn graded_component(f: &GroupAlgElem, n: NSeriesSpec, d: i64) -> PBWElem {
    let (wa, wb, wc) = n.weights();
    let mut out = PBWElem::zero();
    for q in 0..=d / wc {
        for s in 0..=(d - q * wc) / wb {
            let rest = d - q * wc - s * wb;
            if rest % wa != 0 {
                continue;
            }
            let r = rest / wa;
            let mut c = Rational::zero();
            for (&(i, j, k), v) in f.terms() {
                c += v * binomial(i, r) * binomial(j, s) * binomial(k, q);
            }
            out.add_term((r as u32, s as u32, q as u32), c);
        }
    }
    out
}

/// Largest `n` with `f ∈ F_n k[ℍ]`.
pub fn canonical_valuation(f: &GroupAlgElem, n: NSeriesSpec) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    (0..=MAX_DEGREE)
        .find(|&d| !graded_component(f, n, d).is_zero())
        .ok_or_else(|| Error::Internal(format!("no component below degree {MAX_DEGREE}")))
}

/// Leading form of `f` in `gr k[ℍ] ≅ U(H)`.
pub fn theta_leading(f: &GroupAlgElem, n: NSeriesSpec) -> Result<PBWElem> {
    let d = canonical_valuation(f, n)?;
    Ok(graded_component(f, n, d))
}
