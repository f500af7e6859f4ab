use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use super::rational::{show_rat, Rational};
use crate::error::{Error, Result};

/// Polynomial in commuting indeterminates `A`, `B`; key `(i, j)` is `A^i B^j`.
#[derive(Clone, PartialEq, Eq, Debug, Default, Hash)]
pub struct BPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BPoly {
    pub fn zero() -> Self {
        BPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        BPoly::monomial(0, 0, c)
    }

    pub fn one() -> Self {
        BPoly::constant(Rational::one())
    }

    pub fn a() -> Self {
        BPoly::monomial(1, 0, Rational::one())
    }

    pub fn b() -> Self {
        BPoly::monomial(0, 1, Rational::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn add_term(&mut self, k: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &BPoly) -> BPoly {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> BPoly {
        BPoly { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &BPoly) -> BPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> BPoly {
        if s.is_zero() {
            return BPoly::zero();
        }
        BPoly { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn mul(&self, o: &BPoly) -> BPoly {
        let mut out = BPoly::zero();
        for ((i, j), c) in &self.terms {
            for ((k, l), d) in &o.terms {
                out.add_term((i + k, j + l), c * d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> BPoly {
        (0..e).fold(BPoly::one(), |acc, _| acc.mul(self))
    }

    pub fn deriv_a(&self) -> BPoly {
        let mut out = BPoly::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term((i - 1, j), c * Rational::from_integer(i.into()));
            }
        }
        out
    }

    pub fn degree_a(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    /// Substitute `A = a`, leaving a polynomial in `B` only.
    pub fn at_a(&self, a: &Rational) -> BPoly {
        let mut out = BPoly::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term((0, j), c * num::pow(a.clone(), i as usize));
        }
        out
    }

    /// Weighted degrees present, ascending.
    pub fn weighted_degrees(&self, w: (i64, i64)) -> Vec<i64> {
        let mut ds: Vec<i64> = self.terms.keys().map(|&(i, j)| i as i64 * w.0 + j as i64 * w.1).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }
}

impl BPoly {
    /// Display with the given names for `A` and `B`.
    pub fn render(&self, names: (&str, &str)) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (&(i, j), c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut mono = String::new();
            for (v, e) in [(names.0, i), (names.1, j)] {
                match e {
                    0 => {}
                    1 => mono.push_str(v),
                    _ => mono.push_str(&format!("{v}^{e}")),
                }
            }
            if mono.is_empty() {
                out.push_str(&show_rat(&a));
            } else if a.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}{mono}", show_rat(&a)));
            }
        }
        out
    }
}

impl fmt::Display for BPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(("A", "B")))
    }
}

/// Bivariate rational function with weights attached to `A` and `B`.
#[derive(Clone, Debug)]
pub struct GradedBivar {
    pub num: BPoly,
    pub den: BPoly,
    pub weights: (i64, i64),
}

impl GradedBivar {
    pub fn new(num: BPoly, den: BPoly, weights: (i64, i64)) -> Self {
        assert!(!den.is_zero(), "bivariate function with zero denominator");
        let mut g = GradedBivar { num, den, weights };
        g.tidy();
        g
    }

    pub fn poly(p: BPoly, weights: (i64, i64)) -> Self {
        GradedBivar::new(p, BPoly::one(), weights)
    }

    pub fn constant(c: Rational, weights: (i64, i64)) -> Self {
        GradedBivar::poly(BPoly::constant(c), weights)
    }

    pub fn a(weights: (i64, i64)) -> Self {
        GradedBivar::poly(BPoly::a(), weights)
    }

    pub fn b(weights: (i64, i64)) -> Self {
        GradedBivar::poly(BPoly::b(), weights)
    }

    fn tidy(&mut self) {
        if self.num.is_zero() {
            self.den = BPoly::one();
            return;
        }
        if self.num == self.den {
            self.num = BPoly::one();
            self.den = BPoly::one();
            return;
        }
        // cancel the common monomial factor and make the denominator's leading coefficient 1
        let min_i = self.num.terms.keys().chain(self.den.terms.keys()).map(|k| k.0).min().unwrap();
        let min_j = self.num.terms.keys().chain(self.den.terms.keys()).map(|k| k.1).min().unwrap();
        if min_i > 0 || min_j > 0 {
            let shift = |p: &BPoly| BPoly {
                terms: p.terms.iter().map(|(&(i, j), c)| ((i - min_i, j - min_j), c.clone())).collect(),
            };
            self.num = shift(&self.num);
            self.den = shift(&self.den);
        }
        let lc = self.den.terms.values().next_back().unwrap().clone();
        if !lc.is_one() {
            let inv = Rational::one() / lc;
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn with_weights(&self, weights: (i64, i64)) -> Self {
        GradedBivar { weights, ..self.clone() }
    }

    pub fn add(&self, o: &GradedBivar) -> GradedBivar {
        if self.den == o.den {
            return GradedBivar::new(self.num.add(&o.num), self.den.clone(), self.weights);
        }
        GradedBivar::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den), self.weights)
    }

    pub fn neg(&self) -> GradedBivar {
        GradedBivar { num: self.num.neg(), ..self.clone() }
    }

    pub fn sub(&self, o: &GradedBivar) -> GradedBivar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &GradedBivar) -> GradedBivar {
        GradedBivar::new(self.num.mul(&o.num), self.den.mul(&o.den), self.weights)
    }

    pub fn scale(&self, c: &Rational) -> GradedBivar {
        GradedBivar::new(self.num.scale(c), self.den.clone(), self.weights)
    }

    pub fn inv(&self) -> Result<GradedBivar> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(GradedBivar::new(self.den.clone(), self.num.clone(), self.weights))
    }

    pub fn pow(&self, e: i64) -> Result<GradedBivar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok(GradedBivar::new(base.num.pow(e.unsigned_abs() as u32), base.den.pow(e.unsigned_abs() as u32), self.weights))
    }

    /// Value equality by cross-multiplication.
    pub fn equals(&self, o: &GradedBivar) -> bool {
        self.num.mul(&o.den) == o.num.mul(&self.den)
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// True when the value does not depend on `A`.
    pub fn is_a_free(&self) -> bool {
        self.num.deriv_a().mul(&self.den) == self.num.mul(&self.den.deriv_a())
    }

    /// For an `A`-free value, an equivalent representation in `B` alone.
    pub fn drop_a(&self) -> Option<GradedBivar> {
        if !self.is_a_free() {
            return None;
        }
        let mut a = Rational::zero();
        loop {
            let d = self.den.at_a(&a);
            if !d.is_zero() {
                return Some(GradedBivar::new(self.num.at_a(&a), d, self.weights));
            }
            a += Rational::one();
        }
    }

    pub fn degree(&self) -> Result<i64> {
        gradedbivar_degree(self)
    }
}

pub fn gradedbivar_degree(f: &GradedBivar) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroElement);
    }
    let n = f.num.weighted_degrees(f.weights);
    let d = f.den.weighted_degrees(f.weights);
    if n.len() != 1 || d.len() != 1 {
        return Err(Error::NotHomogeneous);
    }
    Ok(n[0] - d[0])
}

impl fmt::Display for GradedBivar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == BPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
