use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num::{One, Signed, Zero};

use super::skew::{ss_invert, ss_mul, SkewSeries, Window};
use crate::error::{Error, Result};
use crate::scalars::{show_rat, RatFunc, Rational};

/// Expression over named atoms in a division ring.
#[derive(Clone, Debug, PartialEq)]
pub enum FracExpr {
    Atom(String),
    Const(Rational),
    Sum(Arc<FracExpr>, Arc<FracExpr>),
    Difference(Arc<FracExpr>, Arc<FracExpr>),
    Product(Arc<FracExpr>, Arc<FracExpr>),
    Inverse(Arc<FracExpr>),
    ScalarMultiple(Rational, Arc<FracExpr>),
}

impl FracExpr {
    pub fn atom(name: &str) -> FracExpr {
        FracExpr::Atom(name.to_string())
    }

    pub fn int(n: i64) -> FracExpr {
        FracExpr::Const(Rational::from_integer(n.into()))
    }

    pub fn konst(c: Rational) -> FracExpr {
        FracExpr::Const(c)
    }

    pub fn add(&self, o: &FracExpr) -> FracExpr {
        FracExpr::Sum(Arc::new(self.clone()), Arc::new(o.clone()))
    }

    pub fn sub(&self, o: &FracExpr) -> FracExpr {
        FracExpr::Difference(Arc::new(self.clone()), Arc::new(o.clone()))
    }

    pub fn mul(&self, o: &FracExpr) -> FracExpr {
        FracExpr::Product(Arc::new(self.clone()), Arc::new(o.clone()))
    }

    pub fn inv(&self) -> FracExpr {
        FracExpr::Inverse(Arc::new(self.clone()))
    }

    pub fn scale(&self, c: Rational) -> FracExpr {
        FracExpr::ScalarMultiple(c, Arc::new(self.clone()))
    }

    /// Left-to-right product of the factors.
    pub fn product(factors: &[FracExpr]) -> FracExpr {
        let mut it = factors.iter();
        let first = it.next().cloned().unwrap_or_else(|| FracExpr::int(1));
        it.fold(first, |acc, f| acc.mul(f))
    }

    pub fn pow(&self, k: i64) -> FracExpr {
        if k == 0 {
            return FracExpr::int(1);
        }
        let base = if k < 0 { self.inv() } else { self.clone() };
        FracExpr::product(&vec![base; k.unsigned_abs() as usize])
    }

    /// `a · b · a⁻¹`
    pub fn conjugate(&self, by: &FracExpr) -> FracExpr {
        FracExpr::product(&[by.clone(), self.clone(), by.inv()])
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            FracExpr::Atom(n) => {
                out.insert(n.clone());
            }
            FracExpr::Const(_) => {}
            FracExpr::Sum(a, b) | FracExpr::Difference(a, b) | FracExpr::Product(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
            FracExpr::Inverse(a) | FracExpr::ScalarMultiple(_, a) => a.collect_atoms(out),
        }
    }

    /// Image under an anti-automorphism: products reverse, atoms map through `f`.
    pub fn star(&self, f: &dyn Fn(&str) -> FracExpr) -> FracExpr {
        match self {
            FracExpr::Atom(n) => f(n),
            FracExpr::Const(c) => FracExpr::Const(c.clone()),
            FracExpr::Sum(a, b) => a.star(f).add(&b.star(f)),
            FracExpr::Difference(a, b) => a.star(f).sub(&b.star(f)),
            FracExpr::Product(a, b) => b.star(f).mul(&a.star(f)),
            FracExpr::Inverse(a) => a.star(f).inv(),
            FracExpr::ScalarMultiple(c, a) => a.star(f).scale(c.clone()),
        }
    }

    /// Replace atoms by expressions.
    pub fn substitute(&self, f: &dyn Fn(&str) -> FracExpr) -> FracExpr {
        match self {
            FracExpr::Atom(n) => f(n),
            FracExpr::Const(c) => FracExpr::Const(c.clone()),
            FracExpr::Sum(a, b) => a.substitute(f).add(&b.substitute(f)),
            FracExpr::Difference(a, b) => a.substitute(f).sub(&b.substitute(f)),
            FracExpr::Product(a, b) => a.substitute(f).mul(&b.substitute(f)),
            FracExpr::Inverse(a) => a.substitute(f).inv(),
            FracExpr::ScalarMultiple(c, a) => a.substitute(f).scale(c.clone()),
        }
    }

    pub fn eval<M: Model>(&self, m: &M) -> Result<M::Elem> {
        match self {
            FracExpr::Atom(n) => m.atom(n),
            FracExpr::Const(c) => m.constant(c),
            FracExpr::Sum(a, b) => m.add(&a.eval(m)?, &b.eval(m)?),
            FracExpr::Difference(a, b) => m.sub(&a.eval(m)?, &b.eval(m)?),
            FracExpr::Product(a, b) => m.mul(&a.eval(m)?, &b.eval(m)?),
            FracExpr::Inverse(a) => m.inv(&a.eval(m)?),
            FracExpr::ScalarMultiple(c, a) => m.scale(c, &a.eval(m)?),
        }
    }
}

/// A ring in which expressions can be evaluated.
pub trait Model {
    type Elem: Clone;
    fn atom(&self, name: &str) -> Result<Self::Elem>;
    fn constant(&self, c: &Rational) -> Result<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, c: &Rational, a: &Self::Elem) -> Result<Self::Elem>;
}

/// Evaluation into truncated skew Laurent series.
pub struct SkewModel {
    pub shift: Rational,
    pub window: Window,
    pub bindings: HashMap<String, SkewSeries>,
}

impl Model for SkewModel {
    type Elem = SkewSeries;

    fn atom(&self, name: &str) -> Result<SkewSeries> {
        self.bindings.get(name).cloned().ok_or_else(|| Error::UnboundAtom(name.to_string()))
    }

    fn constant(&self, c: &Rational) -> Result<SkewSeries> {
        Ok(SkewSeries::constant(self.shift.clone(), self.window, RatFunc::constant(c.clone())))
    }

    fn add(&self, a: &SkewSeries, b: &SkewSeries) -> Result<SkewSeries> {
        a.add(b)
    }

    fn sub(&self, a: &SkewSeries, b: &SkewSeries) -> Result<SkewSeries> {
        a.sub(b)
    }

    fn mul(&self, a: &SkewSeries, b: &SkewSeries) -> Result<SkewSeries> {
        ss_mul(a, b)
    }

    fn inv(&self, a: &SkewSeries) -> Result<SkewSeries> {
        ss_invert(a)
    }

    fn scale(&self, c: &Rational, a: &SkewSeries) -> Result<SkewSeries> {
        Ok(a.scale(c))
    }
}

pub fn eval_frac_expr(e: &FracExpr, bindings: &HashMap<String, SkewSeries>) -> Result<SkewSeries> {
    let first =
        bindings.values().next().ok_or_else(|| Error::UnboundAtom(e.atoms().into_iter().next().unwrap_or_default()))?;
    let shift = first.shift().clone();
    if bindings.values().any(|s| s.shift() != &shift) {
        return Err(Error::ShiftMismatch);
    }
    let window = bindings.values().fold(first.window(), |w, s| w.meet(s.window()));
    let model = SkewModel { shift, window, bindings: bindings.clone() };
    e.eval(&model)
}

impl fmt::Display for FracExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FracExpr::Atom(n) => write!(f, "{n}"),
            FracExpr::Const(c) => write!(f, "{}", show_rat(c)),
            FracExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            FracExpr::Difference(a, b) => write!(f, "({a} - {b})"),
            FracExpr::Product(a, b) => write!(f, "{a}·{b}"),
            FracExpr::Inverse(a) => match a.as_ref() {
                FracExpr::Atom(_) => write!(f, "{a}^-1"),
                _ => write!(f, "({a})^-1"),
            },
            FracExpr::ScalarMultiple(c, a) => {
                if c.is_one() {
                    write!(f, "{a}")
                } else if c.is_negative() {
                    write!(f, "(-{})·{a}", show_rat(&-c))
                } else if c.is_zero() {
                    write!(f, "0")
                } else {
                    write!(f, "({})·{a}", show_rat(c))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    #[test]
    fn star_reverses_products() {
        let e = FracExpr::atom("a").mul(&FracExpr::atom("b").inv());
        let s = e.star(&|n| FracExpr::atom(&format!("{n}*")));
        assert_eq!(s, FracExpr::atom("b*").inv().mul(&FracExpr::atom("a*")));
    }

    #[test]
    fn unbound_atom_reported() {
        let one = SkewSeries::one(int(-1), Window::default());
        let b: HashMap<_, _> = [("y".to_string(), one)].into_iter().collect();
        let e = FracExpr::atom("x");
        assert_eq!(eval_frac_expr(&e, &b), Err(Error::UnboundAtom("x".into())));
    }

    #[test]
    fn atom_binding_is_returned() {
        let p = SkewSeries::monomial(int(-1), Window::default(), 1, RatFunc::one());
        let b: HashMap<_, _> = [("y".to_string(), p.clone())].into_iter().collect();
        assert_eq!(eval_frac_expr(&FracExpr::atom("y"), &b).unwrap(), p);
    }
}
