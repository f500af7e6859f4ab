//! Normal forms for fraction expressions built from the commutative subfields
//! `ℚ(V, z)` and `ℚ(y, z)` of the division ring of fractions of `U(H)`.
//!
//! An element is a sum of terms; a term is a product of factors, each a
//! bivariate rational function in one subfield. Central factors (functions of
//! `z` alone) are pushed into the first non-central factor.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{theta_leading, GroupAlgElem, NSeriesSpec};
use crate::linalg::{solve, Matrix};
use crate::pbw::grading::is_homogeneous;
use crate::pbw::{pbw_leading, GradingSpec, PBWElem};
use crate::scalars::{BPoly, GradedBivar, Rational};
use crate::series::expr::{FracExpr, Model};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Central,
    /// `ℚ(V, z)` with `A = V`, `B = z`
    Vz,
    /// `ℚ(y, z)` with `A = y`, `B = z`
    Yz,
}

impl Family {
    fn names(&self) -> (&'static str, &'static str) {
        match self {
            Family::Central | Family::Vz => ("V", "z"),
            Family::Yz => ("y", "z"),
        }
    }

    fn weights(&self, g: &GradingSpec) -> (i64, i64) {
        match self {
            Family::Central => (0, g.weights.2),
            Family::Vz => g.v_weights(),
            Family::Yz => g.y_weights(),
        }
    }
}

/// Images of `x`, `y`, `z` and `V = (xy + yx)/2` used to read atoms.
#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    pub x: PBWElem,
    pub y: PBWElem,
    pub z: PBWElem,
    pub v: PBWElem,
}

impl Frame {
    pub fn standard() -> Frame {
        Frame::from_basis(PBWElem::x(), PBWElem::y(), PBWElem::z())
    }

    pub fn from_basis(x: PBWElem, y: PBWElem, z: PBWElem) -> Frame {
        let half = Rational::new(1.into(), 2.into());
        let v = x.mul(&y).add(&y.mul(&x)).scale(&half);
        Frame { x, y, z, v }
    }

    /// Frame whose rows are the coordinates of `X`, `Y`, `Z`.
    pub fn from_rows(phi: &Matrix) -> Frame {
        let lin = |r: &Vec<Rational>| {
            PBWElem::from_terms([((1, 0, 0), r[0].clone()), ((0, 1, 0), r[1].clone()), ((0, 0, 1), r[2].clone())])
        };
        Frame::from_basis(lin(&phi[0]), lin(&phi[1]), lin(&phi[2]))
    }

    pub fn bindings(&self) -> HashMap<String, PBWElem> {
        HashMap::from([
            ("x".to_string(), self.x.clone()),
            ("y".to_string(), self.y.clone()),
            ("z".to_string(), self.z.clone()),
            ("V".to_string(), self.v.clone()),
        ])
    }

    fn generator(&self, fam: Family) -> Option<&PBWElem> {
        match fam {
            Family::Central => None,
            Family::Vz => Some(&self.v),
            Family::Yz => Some(&self.y),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Factor {
    pub family: Family,
    pub value: GradedBivar,
}

#[derive(Clone, Debug)]
pub struct Term {
    pub factors: Vec<Factor>,
}

impl Term {
    /// Absorbs central factors and merges neighbours from the same subfield; `None` for zero.
    fn normalize(mut factors: Vec<Factor>, g: &GradingSpec) -> Option<Term> {
        let cw = Family::Central.weights(g);
        loop {
            let mut central = GradedBivar::constant(Rational::one(), cw);
            let mut rest: Vec<Factor> = Vec::new();
            for f in factors {
                if f.value.is_zero() {
                    return None;
                }
                if f.family == Family::Central || f.value.is_a_free() {
                    let v = if f.family == Family::Central { f.value } else { f.value.drop_a()? };
                    central = central.mul(&v.with_weights(cw));
                } else if let Some(last) = rest.last_mut().filter(|l| l.family == f.family) {
                    last.value = last.value.mul(&f.value);
                } else {
                    rest.push(f);
                }
            }
            if rest.iter().any(|f| f.value.is_zero() || f.value.is_a_free()) {
                rest.push(Factor { family: Family::Central, value: central });
                factors = rest;
                continue;
            }
            if rest.is_empty() {
                return Some(Term { factors: vec![Factor { family: Family::Central, value: central }] });
            }
            let w = rest[0].family.weights(g);
            rest[0].value = rest[0].value.mul(&central.with_weights(w));
            return Some(Term { factors: rest });
        }
    }

    /// `s / t` when it is central: same shape, factorwise ratios free of `A`.
    fn ratio(s: &Term, t: &Term, g: &GradingSpec) -> Option<GradedBivar> {
        if s.factors.len() != t.factors.len() {
            return None;
        }
        let cw = Family::Central.weights(g);
        let mut acc = GradedBivar::constant(Rational::one(), cw);
        for (a, b) in s.factors.iter().zip(&t.factors) {
            if a.family != b.family {
                return None;
            }
            let r = a.value.mul(&b.value.inv().ok()?);
            let r = if a.family == Family::Central { r } else { r.drop_a()? };
            acc = acc.mul(&r.with_weights(cw));
        }
        Some(acc)
    }

    fn degree(&self) -> Result<i64> {
        self.factors.iter().map(|f| f.value.degree()).sum()
    }

    fn scale(&self, c: &Rational) -> Term {
        let mut t = self.clone();
        t.factors[0].value = t.factors[0].value.scale(c);
        t
    }
}

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub terms: Vec<Term>,
    pub grading: GradingSpec,
}

impl NormalForm {
    pub fn zero(grading: GradingSpec) -> Self {
        NormalForm { terms: Vec::new(), grading }
    }

    pub fn factor(family: Family, value: GradedBivar, grading: GradingSpec) -> Self {
        let value = value.with_weights(family.weights(&grading));
        let terms = Term::normalize(vec![Factor { family, value }], &grading).into_iter().collect();
        NormalForm { terms, grading }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn single(&self) -> Option<&Factor> {
        match self.terms.as_slice() {
            [t] if t.factors.len() == 1 => Some(&t.factors[0]),
            _ => None,
        }
    }

    pub fn add(&self, o: &NormalForm) -> NormalForm {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let g = self.grading;
        if let (Some(a), Some(b)) = (self.single(), o.single()) {
            let fam = match (a.family, b.family) {
                (x, y) if x == y => Some(x),
                (Family::Central, y) => Some(y),
                (x, Family::Central) => Some(x),
                _ => None,
            };
            if let Some(fam) = fam {
                let w = fam.weights(&g);
                return NormalForm::factor(fam, a.value.with_weights(w).add(&b.value.with_weights(w)), g);
            }
        }
        let mut terms = self.terms.clone();
        for t in &o.terms {
            let hit = terms.iter().enumerate().find_map(|(i, s)| {
                let r = Term::ratio(s, t, &g)?;
                (r.num.is_constant() && r.den.is_constant()).then_some((i, r))
            });
            match hit {
                Some((i, r)) => {
                    let lam = r.num.terms().next().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
                        / r.den.terms().next().map(|(_, c)| c.clone()).unwrap();
                    let factor = Rational::one() + lam.recip();
                    if factor.is_zero() {
                        terms.remove(i);
                    } else {
                        terms[i] = terms[i].scale(&factor);
                    }
                }
                None => terms.push(t.clone()),
            }
        }
        NormalForm { terms, grading: g }
    }

    pub fn scale(&self, c: &Rational) -> NormalForm {
        if c.is_zero() {
            return NormalForm::zero(self.grading);
        }
        NormalForm { terms: self.terms.iter().map(|t| t.scale(c)).collect(), grading: self.grading }
    }

    pub fn neg(&self) -> NormalForm {
        self.scale(&-Rational::one())
    }

    pub fn sub(&self, o: &NormalForm) -> NormalForm {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &NormalForm) -> NormalForm {
        let g = self.grading;
        let mut acc = NormalForm::zero(g);
        for s in &self.terms {
            for t in &o.terms {
                let factors = s.factors.iter().chain(&t.factors).cloned().collect();
                if let Some(term) = Term::normalize(factors, &g) {
                    acc = acc.add(&NormalForm { terms: vec![term], grading: g });
                }
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<NormalForm> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [t] => {
                let factors: Result<Vec<Factor>> =
                    t.factors.iter().rev().map(|f| Ok(Factor { family: f.family, value: f.value.inv()? })).collect();
                let term = Term::normalize(factors?, &self.grading).ok_or(Error::DivisionByZero)?;
                Ok(NormalForm { terms: vec![term], grading: self.grading })
            }
            _ => Err(Error::OutsideSupportedSubfields(format!("inverse of the sum {self}"))),
        }
    }

    /// Equality established by matching terms up to central factors.
    pub fn equals(&self, o: &NormalForm) -> bool {
        if self.terms.len() != o.terms.len() {
            return false;
        }
        let mut used = vec![false; o.terms.len()];
        self.terms.iter().all(|s| {
            let hit = o
                .terms
                .iter()
                .enumerate()
                .find(|(j, t)| !used[*j] && Term::ratio(s, t, &self.grading).is_some_and(|r| r.is_one()));
            match hit {
                Some((j, _)) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }

    /// Common weighted degree of all terms.
    pub fn degree(&self) -> Result<i64> {
        let degs: BTreeSet<i64> = self.terms.iter().map(|t| t.degree()).collect::<Result<_>>()?;
        match degs.len() {
            0 => Err(Error::ZeroElement),
            1 => Ok(*degs.iter().next().unwrap()),
            _ => Err(Error::NotHomogeneous),
        }
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                t.factors
                    .iter()
                    .map(|fa| {
                        let names = fa.family.names();
                        let num = fa.value.num.render(names);
                        if fa.value.den.is_constant() && fa.value.den.terms().all(|(_, c)| c.is_one()) {
                            format!("({num})")
                        } else {
                            format!("({num})/({})", fa.value.den.render(names))
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("·")
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Coefficients `c_ij` with `p = Σ c_ij a^i b^j`, when they exist.
fn express(p: &PBWElem, a: Option<&PBWElem>, b: &PBWElem) -> Option<BPoly> {
    let d = p.total_degree();
    let da = a.map_or(1, |a| a.total_degree().max(1));
    let db = b.total_degree().max(1);
    let max_i = if a.is_some() { d / da } else { 0 };
    let mut monos: Vec<((u32, u32), PBWElem)> = Vec::new();
    let mut ai = PBWElem::one();
    for i in 0..=max_i {
        if i > 0 {
            ai = ai.mul(a.unwrap());
        }
        let mut bj = ai.clone();
        for j in 0..=(d - i * da) / db {
            if j > 0 {
                bj = bj.mul(b);
            }
            monos.push(((i, j), bj.clone()));
        }
    }
    let keys: BTreeSet<(u32, u32, u32)> =
        monos.iter().flat_map(|(_, m)| m.terms().map(|(k, _)| *k)).chain(p.terms().map(|(k, _)| *k)).collect();
    let m: Matrix = keys.iter().map(|k| monos.iter().map(|(_, e)| e.coeff(k.0, k.1, k.2)).collect()).collect();
    let rhs: Vec<Rational> = keys.iter().map(|k| p.coeff(k.0, k.1, k.2)).collect();
    let sol = solve(&m, &rhs)?;
    let mut out = BPoly::zero();
    for ((ij, _), c) in monos.iter().zip(sol) {
        out.add_term(*ij, c);
    }
    Some(out)
}

/// Reads a polynomial as an element of one of the subfields of `frame`.
pub fn recognize(p: &PBWElem, frame: &Frame, g: GradingSpec) -> Result<NormalForm> {
    if p.is_zero() {
        return Ok(NormalForm::zero(g));
    }
    for fam in [Family::Central, Family::Vz, Family::Yz] {
        if let Some(bp) = express(p, frame.generator(fam), &frame.z) {
            return Ok(NormalForm::factor(fam, GradedBivar::poly(bp, fam.weights(&g)), g));
        }
    }
    Err(Error::OutsideSupportedSubfields(p.to_string()))
}

/// Rings whose elements can be combined without inverses.
pub trait PolyRing: Clone {
    fn from_rational(c: &Rational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    fn vanishes(&self) -> bool;
}

impl PolyRing for PBWElem {
    fn from_rational(c: &Rational) -> Self {
        PBWElem::constant(c.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

impl PolyRing for GroupAlgElem {
    fn from_rational(c: &Rational) -> Self {
        GroupAlgElem::constant(c.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
}

struct RingModel<'a, R> {
    bindings: &'a HashMap<String, R>,
}

impl<R: PolyRing> Model for RingModel<'_, R> {
    type Elem = R;
    fn atom(&self, name: &str) -> Result<R> {
        self.bindings.get(name).cloned().ok_or_else(|| Error::UnboundAtom(name.to_string()))
    }
    fn constant(&self, c: &Rational) -> Result<R> {
        Ok(R::from_rational(c))
    }
    fn add(&self, a: &R, b: &R) -> Result<R> {
        Ok(a.plus(b))
    }
    fn sub(&self, a: &R, b: &R) -> Result<R> {
        Ok(a.minus(b))
    }
    fn mul(&self, a: &R, b: &R) -> Result<R> {
        Ok(a.times(b))
    }
    fn inv(&self, _: &R) -> Result<R> {
        Err(Error::Internal("inverse inside a polynomial subexpression".into()))
    }
    fn scale(&self, c: &Rational, a: &R) -> Result<R> {
        Ok(a.scaled(c))
    }
}

fn has_inverse(e: &FracExpr) -> bool {
    match e {
        FracExpr::Atom(_) | FracExpr::Const(_) => false,
        FracExpr::Inverse(_) => true,
        FracExpr::Sum(a, b) | FracExpr::Difference(a, b) | FracExpr::Product(a, b) => has_inverse(a) || has_inverse(b),
        FracExpr::ScalarMultiple(_, a) => has_inverse(a),
    }
}

/// Value of an expression together with whether any lower-order part was discarded.
#[derive(Clone, Debug)]
pub struct FormValue {
    pub form: NormalForm,
    pub homogeneous: bool,
}

impl FormValue {
    pub fn degree(&self) -> Result<i64> {
        self.form.degree()
    }
}

/// Evaluates polynomial subexpressions in `R`, projects them to `U(H)` and
/// combines the pieces in the subfield normal form.
pub struct FormEngine<'a, R> {
    pub bindings: &'a HashMap<String, R>,
    pub frame: &'a Frame,
    pub grading: GradingSpec,
    /// Returns the element of `U(H)` to read off and whether it is all of the input.
    pub project: &'a dyn Fn(&R) -> Result<(PBWElem, bool)>,
    /// Keep only the lowest-degree part of sums.
    pub leading: bool,
}

impl<R: PolyRing> FormEngine<'_, R> {
    pub fn eval(&self, e: &FracExpr) -> Result<FormValue> {
        let g = self.grading;
        if !has_inverse(e) {
            let r = e.eval(&RingModel { bindings: self.bindings })?;
            if r.vanishes() {
                return Ok(FormValue { form: NormalForm::zero(g), homogeneous: true });
            }
            let (p, whole) = (self.project)(&r)?;
            return Ok(FormValue { form: recognize(&p, self.frame, g)?, homogeneous: whole });
        }
        match e {
            FracExpr::Sum(a, b) => self.combine(self.eval(a)?, self.eval(b)?),
            FracExpr::Difference(a, b) => {
                let vb = self.eval(b)?;
                self.combine(self.eval(a)?, FormValue { form: vb.form.neg(), ..vb })
            }
            FracExpr::Product(a, b) => {
                let (va, vb) = (self.eval(a)?, self.eval(b)?);
                Ok(FormValue { form: va.form.mul(&vb.form), homogeneous: va.homogeneous && vb.homogeneous })
            }
            FracExpr::Inverse(a) => {
                let va = self.eval(a)?;
                Ok(FormValue { form: va.form.inv()?, homogeneous: va.homogeneous })
            }
            FracExpr::ScalarMultiple(c, a) => {
                let va = self.eval(a)?;
                Ok(FormValue { form: va.form.scale(c), homogeneous: va.homogeneous })
            }
            FracExpr::Atom(_) | FracExpr::Const(_) => unreachable!("handled as polynomials"),
        }
    }

    fn combine(&self, a: FormValue, b: FormValue) -> Result<FormValue> {
        if !self.leading {
            return Ok(FormValue { form: a.form.add(&b.form), homogeneous: a.homogeneous && b.homogeneous });
        }
        if a.form.is_zero() {
            return Ok(b);
        }
        if b.form.is_zero() {
            return Ok(a);
        }
        let (da, db) = (a.degree()?, b.degree()?);
        if da < db {
            return Ok(FormValue { homogeneous: false, ..a });
        }
        if db < da {
            return Ok(FormValue { homogeneous: false, ..b });
        }
        let form = a.form.add(&b.form);
        if form.is_zero() {
            return Err(Error::LeadingCancellation(format!("leading forms of degree {da} sum to zero")));
        }
        Ok(FormValue { form, homogeneous: a.homogeneous && b.homogeneous })
    }
}

/// `e*` over atoms renamed `name*`, with the starred atoms bound through `star`.
pub fn with_star<R: Clone>(
    e: &FracExpr,
    bindings: &HashMap<String, R>,
    star: &dyn Fn(&R) -> Result<R>,
) -> Result<(FracExpr, HashMap<String, R>)> {
    let starred = e.star(&|n| FracExpr::atom(&format!("{n}*")));
    let mut b = bindings.clone();
    for (k, v) in bindings {
        b.insert(format!("{k}*"), star(v)?);
    }
    Ok((starred, b))
}

/// Exact normal form of an expression over `x, y, z, V` read in `frame`.
pub fn exact_form(e: &FracExpr, bindings: &HashMap<String, PBWElem>, frame: &Frame) -> Result<NormalForm> {
    let project = |p: &PBWElem| Ok((p.clone(), true));
    let engine = FormEngine { bindings, frame, grading: GradingSpec::A, project: &project, leading: false };
    Ok(engine.eval(e)?.form)
}

/// Leading form of an expression over `x, y, z, V` for a grading of `U(H)`.
pub fn pbw_fraction_leading(e: &FracExpr, bindings: &HashMap<String, PBWElem>, g: GradingSpec) -> Result<FormValue> {
    let project = |p: &PBWElem| Ok((pbw_leading(p, &g)?, is_homogeneous(p, &g)));
    let frame = Frame::standard();
    let engine = FormEngine { bindings, frame: &frame, grading: g, project: &project, leading: true };
    engine.eval(e)
}

/// Leading form in `gr k[ℍ] ≅ U(H)` of an expression over group algebra atoms.
pub fn group_fraction_leading(
    e: &FracExpr,
    bindings: &HashMap<String, GroupAlgElem>,
    n: NSeriesSpec,
) -> Result<FormValue> {
    let project = |f: &GroupAlgElem| Ok((theta_leading(f, n)?, false));
    let frame = Frame::standard();
    let engine = FormEngine { bindings, frame: &frame, grading: n.grading(), project: &project, leading: true };
    engine.eval(e)
}

pub fn standard_bindings() -> HashMap<String, PBWElem> {
    Frame::standard().bindings()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{apply_group_involution, build_group_element, group_bindings, GroupInvolutionSpec};
    use crate::pbw::build_element;
    use crate::scalars::rat;

    fn leading(name: &str, g: GradingSpec) -> FormValue {
        pbw_fraction_leading(&build_element(name).unwrap(), &standard_bindings(), g).unwrap()
    }

    #[test]
    fn recognition() {
        let g = GradingSpec::A;
        let f = Frame::standard();
        let vm = PBWElem::v().sub(&PBWElem::z().scale(&rat(1, 3)));
        let nf = recognize(&vm, &f, g).unwrap();
        assert_eq!(nf.to_string(), "(V - 1/3z)");
        let zy = PBWElem::z().add(&PBWElem::y().pow(2));
        assert_eq!(recognize(&zy, &f, g).unwrap().to_string(), "(y^2 + z)");
        assert_eq!(recognize(&PBWElem::z().pow(2), &f, g).unwrap().to_string(), "(z^2)");
        assert!(matches!(recognize(&PBWElem::x(), &f, g), Err(Error::OutsideSupportedSubfields(_))));
        let xy = PBWElem::monomial(1, 1, 0, rat(1, 1));
        assert!(recognize(&xy, &f, g).is_ok());
    }

    #[test]
    fn catalog_degrees() {
        assert_eq!(leading("S1", GradingSpec::A).degree(), Ok(4));
        assert_eq!(leading("T1", GradingSpec::A).degree(), Ok(4));
        assert_eq!(leading("S1", GradingSpec::B).degree(), Ok(6));
        assert_eq!(leading("T2", GradingSpec::B).degree(), Ok(6));
        assert_eq!(leading("S", GradingSpec::A).degree(), Ok(0));
        assert!(leading("S1", GradingSpec::A).homogeneous);
        assert!(leading("T2", GradingSpec::B).homogeneous);
    }

    #[test]
    fn central_factors_move() {
        let g = GradingSpec::A;
        let f = Frame::standard();
        let z = recognize(&PBWElem::z(), &f, g).unwrap();
        let v = recognize(&PBWElem::v(), &f, g).unwrap();
        let y = recognize(&PBWElem::y(), &f, g).unwrap();
        let left = z.mul(&v).mul(&y);
        let right = v.mul(&y).mul(&z);
        assert!(left.equals(&right));
        assert!(!v.mul(&y).equals(&y.mul(&v)));
        assert!(z.mul(&z.inv().unwrap()).equals(&NormalForm::factor(
            Family::Central,
            GradedBivar::constant(rat(1, 1), (0, -2)),
            g
        )));
    }

    #[test]
    fn group_s2_matches_s2() {
        let gb = group_bindings();
        let s2g = group_fraction_leading(&build_group_element("S2_grp").unwrap(), &gb, NSeriesSpec::Series1).unwrap();
        let s2 = leading("S2", GradingSpec::C);
        assert!(s2g.form.equals(&s2.form), "{} vs {}", s2g.form, s2.form);
        assert_eq!(s2g.degree(), Ok(4));
        let v = group_fraction_leading(&build_group_element("V_grp").unwrap(), &gb, NSeriesSpec::Series1).unwrap();
        assert_eq!(v.form.to_string(), "(V)");
        let t3 = group_fraction_leading(&build_group_element("T3_grp").unwrap(), &gb, NSeriesSpec::Series1).unwrap();
        assert!(t3.form.equals(&leading("T3", GradingSpec::C).form));
        let t4 = group_fraction_leading(&build_group_element("T4_grp").unwrap(), &gb, NSeriesSpec::Series2).unwrap();
        assert!(t4.form.equals(&leading("T4", GradingSpec::D).form));
    }

    #[test]
    fn group_s2_times_star() {
        let gb = group_bindings();
        let s2 = build_group_element("S2_grp").unwrap();
        for inv in GroupInvolutionSpec::main() {
            let (s2s, b) = with_star(&s2, &gb, &|f| Ok(apply_group_involution(f, &inv))).unwrap();
            let v = group_fraction_leading(&s2.mul(&s2s), &b, NSeriesSpec::Series1).unwrap();
            assert_eq!(v.degree(), Ok(8));
        }
    }
}
