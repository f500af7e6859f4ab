use std::fmt;

use num::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{identity, inverse, mat_mul, Matrix};
use crate::pbw::PBWElem;
use crate::scalars::{format_rat, int, parse_rat, rat, show_rat, Rational};

/// Linear map on `H` given by the images of `x`, `y`, `z` (rows) in the basis `x, y, z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionSpec {
    pub matrix: Matrix,
    pub family: Option<InvolutionFamily>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum InvolutionFamily {
    /// `x* = ax + by + cz`, `y* = dx - ay + fz`, `z* = z`
    I {
        a: String,
        b: String,
        c: String,
        d: String,
        f: String,
    },
    /// `x* = x + cz`, `y* = y + fz`, `z* = -z`
    II {
        c: String,
        f: String,
    },
    /// `x* = -x`, `y* = -y`, `z* = -z`
    III,
    Eta1,
    Eta2,
    Eta3,
}

impl InvolutionFamily {
    pub fn tag(&self) -> &'static str {
        match self {
            InvolutionFamily::I { .. } => "i",
            InvolutionFamily::II { .. } => "ii",
            InvolutionFamily::III => "iii",
            InvolutionFamily::Eta1 => "eta1",
            InvolutionFamily::Eta2 => "eta2",
            InvolutionFamily::Eta3 => "eta3",
        }
    }
}

impl fmt::Display for InvolutionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvolutionFamily::I { a, b, c, d, f: ff } => write!(f, "(i) a={a} b={b} c={c} d={d} f={ff}"),
            InvolutionFamily::II { c, f: ff } => write!(f, "(ii) c={c} f={ff}"),
            InvolutionFamily::III => write!(f, "(iii)"),
            other => write!(f, "{}", other.tag()),
        }
    }
}

fn diag(a: i64, b: i64, c: i64) -> Matrix {
    vec![vec![int(a), int(0), int(0)], vec![int(0), int(b), int(0)], vec![int(0), int(0), int(c)]]
}

impl InvolutionSpec {
    pub fn new(matrix: Matrix) -> Self {
        InvolutionSpec { matrix, family: None }
    }

    /// `x ↦ x`, `y ↦ -y`, `z ↦ z`
    pub fn eta1() -> Self {
        InvolutionSpec { matrix: diag(1, -1, 1), family: Some(InvolutionFamily::Eta1) }
    }

    /// `x ↦ x`, `y ↦ y`, `z ↦ -z`
    pub fn eta2() -> Self {
        InvolutionSpec { matrix: diag(1, 1, -1), family: Some(InvolutionFamily::Eta2) }
    }

    /// The principal involution.
    pub fn eta3() -> Self {
        InvolutionSpec { matrix: diag(-1, -1, -1), family: Some(InvolutionFamily::Eta3) }
    }

    pub fn canonical(name: &str) -> Result<Self> {
        match name {
            "eta1" => Ok(Self::eta1()),
            "eta2" => Ok(Self::eta2()),
            "eta3" => Ok(Self::eta3()),
            other => Err(Error::UnknownName(format!("involution {other}"))),
        }
    }

    pub fn image(&self, i: usize) -> &[Rational] {
        &self.matrix[i]
    }

    /// Image of a basis vector as a linear element of `U(H)`.
    pub fn image_pbw(&self, i: usize) -> PBWElem {
        linear_pbw(&self.matrix[i])
    }

    /// Accepts either a bare 3×3 array of `"num/den"` strings or `{"matrix": ...}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let m = v.get("matrix").unwrap_or(v);
        let bad = || Error::Parse("involution matrix must be a 3x3 array of \"num/den\" strings".into());
        let rows = m.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
        let mut matrix = Vec::new();
        for r in rows {
            let r = r.as_array().filter(|r| r.len() == 3).ok_or_else(bad)?;
            let row: Result<Vec<Rational>> = r
                .iter()
                .map(|e| match e {
                    serde_json::Value::String(s) => parse_rat(s),
                    serde_json::Value::Number(n) => n.as_i64().map(int).ok_or_else(bad),
                    _ => Err(bad()),
                })
                .collect();
            matrix.push(row?);
        }
        Ok(InvolutionSpec::new(matrix))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let m: Vec<Vec<String>> = self.matrix.iter().map(|r| r.iter().map(format_rat).collect()).collect();
        serde_json::json!({ "matrix": m })
    }
}

impl fmt::Display for InvolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, name) in ["x", "y", "z"].iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name} ↦ {}", linear_pbw(&self.matrix[i]))?;
        }
        Ok(())
    }
}

pub fn linear_pbw(v: &[Rational]) -> PBWElem {
    PBWElem::from_terms([((1, 0, 0), v[0].clone()), ((0, 1, 0), v[1].clone()), ((0, 0, 1), v[2].clone())])
}

/// Coordinates of `[u, v]` in `H`: `[x, y] = -z`.
pub fn h_bracket(u: &[Rational], v: &[Rational]) -> Vec<Rational> {
    let c = &u[1] * &v[0] - &u[0] * &v[1];
    vec![Rational::zero(), Rational::zero(), c]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvolutionCheck {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// `τ² = id` and `τ[u, v] = [τv, τu]` on basis pairs.
pub fn check_involution(s: &InvolutionSpec) -> InvolutionCheck {
    let mut failures = Vec::new();
    let m = &s.matrix;
    if m.len() != 3 || m.iter().any(|r| r.len() != 3) {
        return InvolutionCheck { ok: false, failures: vec!["matrix is not 3x3".into()] };
    }
    let sq = mat_mul(m, m);
    let names = ["x", "y", "z"];
    for (i, n) in names.iter().enumerate() {
        if sq[i] != identity(3)[i] {
            failures.push(format!("{n}** = {} ≠ {n}", linear_pbw(&sq[i])));
        }
    }
    let basis = identity(3);
    let apply = |v: &[Rational]| -> Vec<Rational> {
        (0..3).map(|j| (0..3).fold(Rational::zero(), |acc, i| acc + &v[i] * &m[i][j])).collect()
    };
    for i in 0..3 {
        for j in (i + 1)..3 {
            let lhs = apply(&h_bracket(&basis[i], &basis[j]));
            let rhs = h_bracket(&m[j], &m[i]);
            if lhs != rhs {
                failures.push(format!(
                    "[{0},{1}]* = {2} but [{1}*,{0}*] = {3}",
                    names[i],
                    names[j],
                    linear_pbw(&lhs),
                    linear_pbw(&rhs)
                ));
            }
        }
    }
    InvolutionCheck { ok: failures.is_empty(), failures }
}

/// Classification into families (i), (ii), (iii).
pub fn classify_involution(s: &InvolutionSpec) -> Result<InvolutionFamily> {
    let chk = check_involution(s);
    if !chk.ok {
        return Err(Error::NotAnInvolution(chk.failures.join("; ")));
    }
    let m = &s.matrix;
    let zero = Rational::zero();
    if m[2][0] != zero || m[2][1] != zero {
        return Err(Error::Internal("z* is not central".into()));
    }
    let (a, b, c) = (m[0][0].clone(), m[0][1].clone(), m[0][2].clone());
    let (d, e, f) = (m[1][0].clone(), m[1][1].clone(), m[1][2].clone());
    let one = Rational::one();
    if m[2][2] == one {
        let ok = e == -a.clone()
            && &a * &a + &b * &d == one
            && (&a + &one) * &c + &b * &f == zero
            && &d * &c + (&one - &a) * &f == zero;
        if !ok {
            return Err(Error::Internal("family (i) constraints fail".into()));
        }
        return Ok(InvolutionFamily::I {
            a: show_rat(&a),
            b: show_rat(&b),
            c: show_rat(&c),
            d: show_rat(&d),
            f: show_rat(&f),
        });
    }
    if m[2][2] == -one.clone() {
        if a == one && e == one && b == zero && d == zero {
            return Ok(InvolutionFamily::II { c: show_rat(&c), f: show_rat(&f) });
        }
        if a == -one.clone() && e == -one.clone() && b == zero && d == zero && c == zero && f == zero {
            return Ok(InvolutionFamily::III);
        }
    }
    Err(Error::Internal("valid involution outside families (i)-(iii)".into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalTransform {
    /// Rows are `X = φ(x)`, `Y = φ(y)`, `Z = φ(z)`.
    pub phi: Matrix,
    pub canonical: InvolutionSpec,
    pub case: String,
}

/// Basis change `φ` with `φ⁻¹ τ φ = η` (as matrices, `Φ·T·Φ⁻¹ = E`).
pub fn canonical_transform(s: &InvolutionSpec) -> Result<CanonicalTransform> {
    let fam = classify_involution(s)?;
    let m = &s.matrix;
    let h = |q: &Rational| q / int(2);
    let one = Rational::one();
    let (phi, canonical, case) = match fam {
        InvolutionFamily::I { .. } => {
            let (a, b, c) = (&m[0][0], &m[0][1], &m[0][2]);
            let (d, f) = (&m[1][0], &m[1][2]);
            let zero = Rational::zero();
            let (rows, case) = if !b.is_zero() {
                (
                    vec![
                        vec![h(&(&one + a)), h(b), h(c)],
                        vec![h(&(&one - a)), -h(b), -h(c)],
                        vec![zero.clone(), zero.clone(), -h(b)],
                    ],
                    "I",
                )
            } else if !d.is_zero() {
                (
                    vec![
                        vec![h(d), h(&(&one - a)), h(f)],
                        vec![h(d), -h(&(a + &one)), h(f)],
                        vec![zero.clone(), zero.clone(), -h(d)],
                    ],
                    "II",
                )
            } else {
                (
                    vec![
                        vec![-h(&(&one + a)), h(&(&one - a)), h(&(f - c))],
                        vec![h(&(a - &one)), h(&(&one + a)), h(&(c - f))],
                        vec![zero.clone(), zero.clone(), -a.clone()],
                    ],
                    "III",
                )
            };
            (rows, InvolutionSpec::eta1(), format!("family (i), case {case}"))
        }
        InvolutionFamily::II { .. } => {
            let mut rows = identity(3);
            rows[0][2] = h(&m[0][2]);
            rows[1][2] = h(&m[1][2]);
            (rows, InvolutionSpec::eta2(), "family (ii)".to_string())
        }
        _ => (identity(3), InvolutionSpec::eta3(), "family (iii)".to_string()),
    };
    let t = CanonicalTransform { phi, canonical, case };
    verify_transform(s, &t)?;
    Ok(t)
}

/// `[Y, X] = Z` and `Φ·T·Φ⁻¹ = E`.
pub fn verify_transform(s: &InvolutionSpec, t: &CanonicalTransform) -> Result<()> {
    let phi = &t.phi;
    let inv = inverse(phi).ok_or_else(|| Error::Internal("basis change is singular".into()))?;
    if h_bracket(&phi[1], &phi[0]) != phi[2] {
        return Err(Error::Internal("[Y, X] ≠ Z".into()));
    }
    if mat_mul(&mat_mul(phi, &s.matrix), &inv) != t.canonical.matrix {
        return Err(Error::Internal("conjugation does not give the canonical involution".into()));
    }
    Ok(())
}

/// Anti-automorphism extension: `(x^l y^m z^n)* = (z*)^n (y*)^m (x*)^l`.
pub fn apply_involution_pbw(f: &PBWElem, s: &InvolutionSpec) -> Result<PBWElem> {
    let chk = check_involution(s);
    if !chk.ok {
        return Err(Error::NotAnInvolution(chk.failures.join("; ")));
    }
    let (xs, ys, zs) = (s.image_pbw(0), s.image_pbw(1), s.image_pbw(2));
    let mut out = PBWElem::zero();
    for (&(l, m, n), c) in f.terms() {
        let t = zs.pow(n).mul(&ys.pow(m)).mul(&xs.pow(l));
        out = out.add(&t.scale(c));
    }
    Ok(out)
}

/// Family (i) with `b ≠ 0`: `d = (1 - a²)/b`, `(c, f)` on the line `(a+1)c + bf = 0`.
pub fn sample_family_i<R: Rng>(rng: &mut R) -> InvolutionSpec {
    let small = |rng: &mut R| rat(rng.gen_range(-6..=6), rng.gen_range(1..=4));
    let a = small(rng);
    let b = loop {
        let b = small(rng);
        if !b.is_zero() {
            break b;
        }
    };
    let d = (Rational::one() - &a * &a) / &b;
    let c = small(rng);
    let f = -(&a + Rational::one()) * &c / &b;
    let matrix = vec![
        vec![a.clone(), b.clone(), c.clone()],
        vec![d.clone(), -a.clone(), f.clone()],
        vec![Rational::zero(), Rational::zero(), Rational::one()],
    ];
    InvolutionSpec { matrix, family: None }
}
