//! Descending ℤ-filtrations of `U(H)` from a grading, the Rees ring
//! `⊕ F_n·g^n ⊂ U(H)[g, g⁻¹]` and its two quotients.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pbw::grading::{in_filtration, pbw_grade_decompose, pbw_valuation};
use crate::pbw::{pbw_mul, GradingSpec, PBWElem};

#[derive(Clone, Debug, PartialEq)]
pub struct ReesElem {
    grading: GradingSpec,
    parts: BTreeMap<i64, PBWElem>,
}

impl ReesElem {
    pub fn zero(grading: GradingSpec) -> Self {
        ReesElem { grading, parts: BTreeMap::new() }
    }

    /// Sums pairs of equal degree and checks `a ∈ F_n` for each pair `(a, n)`.
    pub fn new(grading: GradingSpec, pairs: impl IntoIterator<Item = (PBWElem, i64)>) -> Result<Self> {
        let mut r = ReesElem::zero(grading);
        for (a, n) in pairs {
            r.push(a, n);
        }
        r.check()?;
        Ok(r)
    }

    /// `f` placed at its own valuation.
    pub fn at_valuation(grading: GradingSpec, f: PBWElem) -> Result<Self> {
        let v = pbw_valuation(&f, &grading)?;
        ReesElem::new(grading, [(f, v)])
    }

    fn push(&mut self, a: PBWElem, n: i64) {
        let slot = self.parts.entry(n).or_default();
        *slot = slot.add(&a);
        if slot.is_zero() {
            self.parts.remove(&n);
        }
    }

    fn check(&self) -> Result<()> {
        for (n, a) in &self.parts {
            if !in_filtration(a, *n, &self.grading) {
                return Err(Error::FiltrationViolation(format!("{a} is not in F_{n} for grading {}", self.grading)));
            }
        }
        Ok(())
    }

    pub fn grading(&self) -> GradingSpec {
        self.grading
    }

    pub fn parts(&self) -> &BTreeMap<i64, PBWElem> {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add(&self, o: &ReesElem) -> Result<ReesElem> {
        same_grading(self, o)?;
        let mut r = self.clone();
        for (n, a) in &o.parts {
            r.push(a.clone(), *n);
        }
        Ok(r)
    }
}

fn same_grading(x: &ReesElem, y: &ReesElem) -> Result<()> {
    if x.grading != y.grading {
        return Err(Error::FiltrationViolation(format!("gradings {} and {} differ", x.grading, y.grading)));
    }
    Ok(())
}

pub fn rees_mul(x: &ReesElem, y: &ReesElem) -> Result<ReesElem> {
    same_grading(x, y)?;
    let mut r = ReesElem::zero(x.grading);
    for (n, a) in &x.parts {
        for (m, b) in &y.parts {
            r.push(pbw_mul(a, b), n + m);
        }
    }
    r.check()?;
    Ok(r)
}

/// `max (n - υ(a_n))` over the stored pairs; never positive.
pub fn omega(x: &ReesElem) -> Result<i64> {
    x.parts
        .iter()
        .map(|(n, a)| Ok(n - pbw_valuation(a, &x.grading)?))
        .collect::<Result<Vec<i64>>>()?
        .into_iter()
        .max()
        .ok_or(Error::ZeroElement)
}

/// Image in `gr(U(H))`: the degree-`n` component of `a_n`, for each `n`.
pub fn quotient_to_gr(x: &ReesElem) -> BTreeMap<i64, PBWElem> {
    x.parts.iter().filter_map(|(n, a)| pbw_grade_decompose(a, &x.grading).remove(n).map(|c| (*n, c))).collect()
}

/// Image in `U(H)` under `g ↦ 1`.
pub fn quotient_to_ring(x: &ReesElem) -> PBWElem {
    x.parts.values().fold(PBWElem::zero(), |acc, a| acc.add(a))
}

/// Product in the associated graded ring, components indexed by degree.
pub fn gr_mul(f: &BTreeMap<i64, PBWElem>, g: &BTreeMap<i64, PBWElem>) -> BTreeMap<i64, PBWElem> {
    let mut out: BTreeMap<i64, PBWElem> = BTreeMap::new();
    for (n, a) in f {
        for (m, b) in g {
            let slot = out.entry(n + m).or_default();
            *slot = slot.add(&pbw_mul(a, b));
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl fmt::Display for ReesElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.parts.iter().map(|(n, a)| format!("({a})·g^{n}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}
