use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{format_rat, parse_rat, show_rat, Rational};

/// Element `Σ a^i b^j c^k · coeff` of `k[ℍ]`, with `c = (b, a)` central and `b·a = a·b·c`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GroupAlgElem {
    terms: BTreeMap<(i64, i64, i64), Rational>,
}

impl GroupAlgElem {
    pub fn zero() -> Self {
        GroupAlgElem::default()
    }

    pub fn one() -> Self {
        GroupAlgElem::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        GroupAlgElem::monomial(0, 0, 0, c)
    }

    pub fn monomial(i: i64, j: i64, k: i64, c: Rational) -> Self {
        let mut e = GroupAlgElem::zero();
        e.add_term((i, j, k), c);
        e
    }

    pub fn group(i: i64, j: i64, k: i64) -> Self {
        GroupAlgElem::monomial(i, j, k, Rational::one())
    }

    pub fn a() -> Self {
        GroupAlgElem::group(1, 0, 0)
    }

    pub fn b() -> Self {
        GroupAlgElem::group(0, 1, 0)
    }

    pub fn c() -> Self {
        GroupAlgElem::group(0, 0, 1)
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((i64, i64, i64), Rational)>) -> Self {
        let mut e = GroupAlgElem::zero();
        for (k, c) in it {
            e.add_term(k, c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64, i64), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: i64, j: i64, k: i64) -> Rational {
        self.terms.get(&(i, j, k)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: (i64, i64, i64), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &GroupAlgElem) -> GroupAlgElem {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> GroupAlgElem {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &GroupAlgElem) -> GroupAlgElem {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> GroupAlgElem {
        if s.is_zero() {
            return GroupAlgElem::zero();
        }
        GroupAlgElem { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn mul(&self, o: &GroupAlgElem) -> GroupAlgElem {
        ha_mul(self, o)
    }

    /// Inverse of a single scaled group element.
    pub fn inv_monomial(&self) -> Option<GroupAlgElem> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(i, j, k), c) = self.terms.iter().next()?;
        // (a^i b^j c^k)^{-1} = c^{-k} b^{-j} a^{-i} = a^{-i} b^{-j} c^{-k+ij}
        Some(GroupAlgElem::monomial(-i, -j, -k + i * j, c.recip()))
    }

    pub fn pow(&self, e: i64) -> Result<GroupAlgElem> {
        let base = if e < 0 {
            self.inv_monomial().ok_or_else(|| Error::NotAUnit("group algebra element is not a monomial".into()))?
        } else {
            self.clone()
        };
        let mut acc = GroupAlgElem::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Augmentation `ε(Σ g·c) = Σ c`.
    pub fn augmentation(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(&(i, j, k), c)| serde_json::json!([i, j, k, format_rat(c)])).collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("group term must be [i, j, k, \"num/den\"]".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut out = GroupAlgElem::zero();
        for t in arr {
            let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(bad)?;
            let e = |i: usize| t[i].as_i64().ok_or_else(bad);
            out.add_term((e(0)?, e(1)?, e(2)?), parse_rat(t[3].as_str().ok_or_else(bad)?)?);
        }
        Ok(out)
    }
}

impl Serialize for GroupAlgElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupAlgElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        GroupAlgElem::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Normal-form product: `b^j a^i' = a^i' b^j c^{j i'}`.
pub fn ha_mul(f: &GroupAlgElem, g: &GroupAlgElem) -> GroupAlgElem {
    let mut out = GroupAlgElem::zero();
    for (&(i, j, k), c) in &f.terms {
        for (&(i2, j2, k2), d) in &g.terms {
            out.add_term((i + i2, j + j2, k + k2 + j * i2), c * d);
        }
    }
    out
}

impl fmt::Display for GroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&(i, j, k), c)) in self.terms.iter().enumerate() {
            let mut mono = String::new();
            for (s, e) in [("a", i), ("b", j), ("c", k)] {
                match e {
                    0 => {}
                    1 => mono.push_str(s),
                    e => mono.push_str(&format!("{s}^{e}")),
                }
            }
            let neg = c < &Rational::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{}", show_rat(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}{mono}", show_rat(&a))?;
            }
        }
        Ok(())
    }
}

/// Upper unitriangular integer matrix.
pub type UniMat = [[i64; 3]; 3];

fn mat_mul3(p: &UniMat, q: &UniMat) -> UniMat {
    let mut r = [[0i64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = (0..3).map(|k| p[i][k] * q[k][j]).sum();
        }
    }
    r
}

fn mat_pow(m: &UniMat, e: i64) -> UniMat {
    let base = if e < 0 {
        // inverse of [[1,α,γ],[0,1,β],[0,0,1]]
        let (a, b, g) = (m[0][1], m[1][2], m[0][2]);
        [[1, -a, a * b - g], [0, 1, -b], [0, 0, 1]]
    } else {
        *m
    };
    let mut acc = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    for _ in 0..e.unsigned_abs() {
        acc = mat_mul3(&acc, &base);
    }
    acc
}

pub const MAT_A: UniMat = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
pub const MAT_B: UniMat = [[1, 0, 0], [0, 1, 1], [0, 0, 1]];

/// Image of `a^i b^j c^k` with `c` computed as the commutator `b⁻¹a⁻¹ba`.
pub fn group_matrix(i: i64, j: i64, k: i64) -> UniMat {
    let c = mat_mul3(&mat_mul3(&mat_pow(&MAT_B, -1), &mat_pow(&MAT_A, -1)), &mat_mul3(&MAT_B, &MAT_A));
    mat_mul3(&mat_mul3(&mat_pow(&MAT_A, i), &mat_pow(&MAT_B, j)), &mat_pow(&c, k))
}

/// The group algebra written over the faithful unitriangular representation.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MatrixAlgElem {
    pub terms: BTreeMap<UniMat, Rational>,
}

impl MatrixAlgElem {
    pub fn add_term(&mut self, m: UniMat, c: Rational) {
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn mul(&self, o: &MatrixAlgElem) -> MatrixAlgElem {
        let mut out = MatrixAlgElem::default();
        for (p, c) in &self.terms {
            for (q, d) in &o.terms {
                out.add_term(mat_mul3(p, q), c * d);
            }
        }
        out
    }
}

pub fn ha_matrix_oracle(f: &GroupAlgElem) -> MatrixAlgElem {
    let mut out = MatrixAlgElem::default();
    for (&(i, j, k), c) in f.terms() {
        out.add_term(group_matrix(i, j, k), c.clone());
    }
    out
}
