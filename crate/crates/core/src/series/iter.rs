//! Iterated Laurent series `ℚ((t_z))((t_y))((t_x; δ))` receiving `U(H)` via
//! `x ↦ t_x⁻¹`, `y ↦ t_y⁻¹`, `z ↦ t_z⁻¹`, with `δ(f) = -t_z⁻¹·t_y²·∂f/∂t_y`
//! and `a·t_x = t_x·a - t_x·δ(a)·t_x`.

use std::fmt;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use super::expr::Model;
use crate::error::{Error, Result};
use crate::pbw::PBWElem;
use crate::scalars::rational::binomial_i;
use crate::scalars::{show_rat, Rational};

/// Highest stored exponent at each level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterPrec {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl Default for IterPrec {
    fn default() -> Self {
        IterPrec { x: 4, y: 8, z: 8 }
    }
}

pub trait Coef: Clone + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Zero with no truncation uncertainty.
    fn is_exact_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn inv(&self) -> Result<Self>;
    fn agrees(&self, o: &Self) -> bool;
}

impl Coef for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_exact_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            return Err(Error::NotAUnit("scalar level: zero".into()));
        }
        Ok(Rational::one() / self)
    }
    fn agrees(&self, o: &Self) -> bool {
        self == o
    }
}

/// Truncated commutative Laurent series in one variable.
#[derive(Clone, Debug)]
pub struct Lau<C: Coef> {
    pub low: i64,
    pub prec: i64,
    pub exact: bool,
    pub cap: i64,
    pub level: &'static str,
    pub c: Vec<C>,
    zero: C,
}

impl<C: Coef> Lau<C> {
    pub fn polynomial(level: &'static str, cap: i64, zero: C, low: i64, coeffs: Vec<C>) -> Self {
        let coeffs = if coeffs.is_empty() { vec![zero.clone()] } else { coeffs };
        let prec = low + coeffs.len() as i64 - 1;
        let mut s = Lau { low, prec, exact: true, cap, level, c: coeffs, zero };
        s.clip();
        s.normalize();
        s
    }

    pub fn coeff(&self, n: i64) -> Option<C> {
        if n < self.low || (self.exact && n > self.prec) {
            Some(self.zero.clone())
        } else if n <= self.prec {
            Some(self.c[(n - self.low) as usize].clone())
        } else {
            None
        }
    }

    fn clip(&mut self) {
        if self.prec > self.cap {
            let keep = (self.cap - self.low + 1).max(1) as usize;
            self.c.truncate(keep);
            self.prec = self.low + self.c.len() as i64 - 1;
            self.exact = false;
        }
    }

    fn normalize(&mut self) {
        let z = self.c.iter().take_while(|x| x.is_exact_zero()).count().min(self.c.len() - 1);
        if z > 0 {
            self.c.drain(..z);
            self.low += z as i64;
        }
        if self.exact {
            while self.c.len() > 1 && self.c.last().is_some_and(|x| x.is_exact_zero()) {
                self.c.pop();
                self.prec -= 1;
            }
        }
    }

    fn build(&self, low: i64, prec: i64, exact: bool, f: impl Fn(i64) -> C) -> Result<Self> {
        let (prec, exact) = if prec > self.cap { (self.cap, false) } else { (prec, exact) };
        if prec < low {
            return Err(Error::PrecisionExhausted(format!("{} level: empty range {low}..={prec}", self.level)));
        }
        let mut s = Lau {
            low,
            prec,
            exact,
            cap: self.cap,
            level: self.level,
            c: (low..=prec).map(f).collect(),
            zero: self.zero.clone(),
        };
        s.normalize();
        Ok(s)
    }

    fn sum_prec(&self, o: &Self) -> (i64, bool) {
        match (self.exact, o.exact) {
            (true, true) => (self.prec.max(o.prec), true),
            (true, false) => (o.prec, false),
            (false, true) => (self.prec, false),
            (false, false) => (self.prec.min(o.prec), false),
        }
    }

    fn prod_prec(&self, o: &Self) -> (i64, bool) {
        if self.exact && o.exact {
            return (self.prec + o.prec, true);
        }
        let pa = if self.exact { i64::MAX } else { self.prec + o.low };
        let pb = if o.exact { i64::MAX } else { o.prec + self.low };
        (pa.min(pb), false)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        let (prec, exact) = self.sum_prec(o);
        self.build(self.low.min(o.low), prec, exact, |n| self.coeff(n).unwrap().add(&o.coeff(n).unwrap()))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let (prec, exact) = self.prod_prec(o);
        let low = self.low + o.low;
        self.build(low, prec, exact, |n| {
            let mut acc = self.zero.clone();
            for (ii, a) in self.c.iter().enumerate() {
                let j = n - (self.low + ii as i64);
                if j < o.low || j > o.prec || a.is_zero() {
                    continue;
                }
                let b = &o.c[(j - o.low) as usize];
                if !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        })
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.c.iter().all(|x| x.is_zero()) {
            return Err(Error::NotAUnit(format!("{} level: series vanishes to precision", self.level)));
        }
        let a0inv =
            self.c[0].inv().map_err(|e| Error::NotAUnit(format!("{} level, lowest coefficient: {e}", self.level)))?;
        let blow = -self.low;
        if self.exact && self.c.len() == 1 {
            let mut s = self.clone();
            s.low = blow;
            s.prec = blow;
            s.c = vec![a0inv];
            s.clip();
            return Ok(s);
        }
        let prec = if self.exact { self.cap } else { (blow + self.prec - self.low).min(self.cap) };
        if prec < blow {
            return Err(Error::PrecisionExhausted(format!("{} level inverse", self.level)));
        }
        let mut b: Vec<C> = Vec::new();
        for j in blow..=prec {
            let n = self.low + j;
            let mut rhs = if n == 0 { self.zero.one_like() } else { self.zero.clone() };
            for (k, bk) in b.iter().enumerate() {
                let i = n - (blow + k as i64);
                if let Some(ai) = self.coeff(i) {
                    if !ai.is_zero() && !bk.is_zero() {
                        rhs = rhs.add(&ai.mul(bk).neg());
                    }
                }
            }
            b.push(rhs.mul(&a0inv));
        }
        Ok(Lau { low: blow, prec, exact: false, cap: self.cap, level: self.level, c: b, zero: self.zero.clone() })
    }

    /// Multiply by the variable to the power `k`.
    pub fn mul_var(&self, k: i64) -> Self {
        let mut s = self.clone();
        s.low += k;
        s.prec += k;
        s.clip();
        s
    }

    pub fn map(&self, f: impl Fn(i64, &C) -> C) -> Self {
        let mut s = self.clone();
        s.c = self.c.iter().enumerate().map(|(k, x)| f(self.low + k as i64, x)).collect();
        s.normalize();
        s
    }
}

impl<C: Coef> Coef for Lau<C> {
    fn zero_like(&self) -> Self {
        Lau::polynomial(self.level, self.cap, self.zero.clone(), 0, vec![])
    }
    fn one_like(&self) -> Self {
        Lau::polynomial(self.level, self.cap, self.zero.clone(), 0, vec![self.zero.one_like()])
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn is_exact_zero(&self) -> bool {
        self.exact && self.c.iter().all(|x| x.is_exact_zero())
    }
    fn add(&self, o: &Self) -> Self {
        self.try_add(o).expect("precision exhausted in series sum")
    }
    fn neg(&self) -> Self {
        self.map(|_, x| x.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        self.try_mul(o).expect("precision exhausted in series product")
    }
    fn scale(&self, c: &Rational) -> Self {
        self.map(|_, x| x.scale(c))
    }
    fn inv(&self) -> Result<Self> {
        self.try_inv()
    }
    fn agrees(&self, o: &Self) -> bool {
        let (hi, _) = self.sum_prec(o);
        (self.low.min(o.low)..=hi).all(|n| match (self.coeff(n), o.coeff(n)) {
            (Some(a), Some(b)) => a.agrees(&b),
            _ => true,
        })
    }
}

pub type ZSer = Lau<Rational>;
pub type YSer = Lau<ZSer>;

/// `Σ t_x^i · a_i` with coefficients in `ℚ((t_z))((t_y))`, written on the right.
#[derive(Clone, Debug)]
pub struct IterSeries {
    pub caps: IterPrec,
    pub outer: Lau<YSer>,
}

fn zser_zero(caps: IterPrec) -> ZSer {
    Lau::polynomial("t_z", caps.z, Rational::zero(), 0, vec![])
}

fn yser_zero(caps: IterPrec) -> YSer {
    Lau::polynomial("t_y", caps.y, zser_zero(caps), 0, vec![])
}

/// `δ(f) = -t_z⁻¹·t_y²·∂f/∂t_y`
pub fn delta(f: &YSer) -> YSer {
    let mut out = f.map(|e, c| c.mul_var(-1).scale(&Rational::from_integer((-e).into())));
    out.low += 1;
    out.prec += 1;
    out.clip();
    out.normalize();
    out
}

impl IterSeries {
    pub fn zero(caps: IterPrec) -> Self {
        IterSeries { caps, outer: Lau::polynomial("t_x", caps.x, yser_zero(caps), 0, vec![]) }
    }

    pub fn one(caps: IterPrec) -> Self {
        IterSeries::monomial(caps, 0, 0, 0, Rational::one())
    }

    /// `c · t_x^i · t_y^j · t_z^k`
    pub fn monomial(caps: IterPrec, i: i64, j: i64, k: i64, c: Rational) -> Self {
        let z = Lau::polynomial("t_z", caps.z, Rational::zero(), k, vec![c]);
        let y = Lau::polynomial("t_y", caps.y, zser_zero(caps), j, vec![z]);
        IterSeries { caps, outer: Lau::polynomial("t_x", caps.x, yser_zero(caps), i, vec![y]) }
    }

    pub fn low(&self) -> i64 {
        self.outer.low
    }

    pub fn prec(&self) -> i64 {
        self.outer.prec
    }

    pub fn is_exact(&self) -> bool {
        self.outer.exact && self.outer.c.iter().all(|y| y.exact && y.c.iter().all(|z| z.exact))
    }

    pub fn add(&self, o: &IterSeries) -> Result<IterSeries> {
        Ok(IterSeries { caps: self.caps, outer: self.outer.try_add(&o.outer)? })
    }

    pub fn neg(&self) -> IterSeries {
        IterSeries { caps: self.caps, outer: self.outer.neg() }
    }

    pub fn sub(&self, o: &IterSeries) -> Result<IterSeries> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> IterSeries {
        IterSeries { caps: self.caps, outer: self.outer.scale(c) }
    }

    /// Coefficient of `t_x^i t_y^j t_z^k`, if known.
    pub fn coeff(&self, i: i64, j: i64, k: i64) -> Option<Rational> {
        self.outer.coeff(i)?.coeff(j)?.coeff(k)
    }

    pub fn agrees_with(&self, o: &IterSeries) -> bool {
        self.outer.agrees(&o.outer)
    }

    pub fn is_one(&self) -> bool {
        self.agrees_with(&IterSeries::one(self.caps))
    }

    /// Every known rational coefficient as `((i, j, k), value)`.
    pub fn known_coefficients(&self) -> Vec<((i64, i64, i64), Rational)> {
        let mut out = Vec::new();
        for (ii, y) in self.outer.c.iter().enumerate() {
            for (jj, z) in y.c.iter().enumerate() {
                for (kk, q) in z.c.iter().enumerate() {
                    let key = (self.outer.low + ii as i64, y.low + jj as i64, z.low + kk as i64);
                    out.push((key, q.clone()));
                }
            }
        }
        out
    }
}

fn twisted_term(a_k: &YSer, j: i64, k: i64, b: &YSer) -> Result<Option<YSer>> {
    let c = binomial_i(-j, k);
    if c == 0 || a_k.is_zero() || b.is_zero() {
        return Ok(None);
    }
    Ok(Some(a_k.try_mul(b)?.scale(&Rational::from_integer(c.into()))))
}

/// `(t_x^i a)(t_x^j b) = Σ_k C(-j, k) t_x^{i+j+k} δ^k(a) b`
pub fn iter_mul(a: &IterSeries, b: &IterSeries) -> Result<IterSeries> {
    let (x, y) = (&a.outer, &b.outer);
    let low = x.low + y.low;
    let b_nonpositive = y.c.iter().enumerate().all(|(k, c)| y.low + k as i64 <= 0 || c.is_exact_zero());
    let (prec, exact) =
        if x.exact && y.exact && b_nonpositive { (x.prec + y.prec.max(0), true) } else { x.prod_prec(y) };
    let prec_c = prec.min(x.cap);
    let depth = (prec_c - low).max(0);
    let mut deltas: Vec<Vec<YSer>> = Vec::with_capacity(x.c.len());
    for ai in &x.c {
        let mut chain = vec![ai.clone()];
        for _ in 0..depth {
            let next = delta(chain.last().unwrap());
            chain.push(next);
        }
        deltas.push(chain);
    }
    let mut coeffs = Vec::new();
    let hi = prec_c;
    if hi < low {
        return Err(Error::PrecisionExhausted("t_x level: empty range".into()));
    }
    for n in low..=hi {
        let mut acc = yser_zero(a.caps);
        for (ii, chain) in deltas.iter().enumerate() {
            let i = x.low + ii as i64;
            for (jj, bj) in y.c.iter().enumerate() {
                let j = y.low + jj as i64;
                let k = n - i - j;
                if k < 0 || k as usize >= chain.len() {
                    continue;
                }
                if let Some(t) = twisted_term(&chain[k as usize], j, k, bj)? {
                    acc = acc.try_add(&t)?;
                }
            }
        }
        coeffs.push(acc);
    }
    let mut outer = Lau {
        low,
        prec: hi,
        exact: exact && prec <= x.cap,
        cap: x.cap,
        level: "t_x",
        c: coeffs,
        zero: yser_zero(a.caps),
    };
    outer.normalize();
    Ok(IterSeries { caps: a.caps, outer })
}

pub fn iter_invert(a: &IterSeries) -> Result<IterSeries> {
    let x = &a.outer;
    if x.c.iter().all(|c| c.is_zero()) {
        return Err(Error::NotAUnit("t_x level: series vanishes to precision".into()));
    }
    let a0inv = x.c[0].try_inv().map_err(|e| match e {
        Error::NotAUnit(m) => Error::NotAUnit(format!("lowest t_x coefficient; {m}")),
        other => other,
    })?;
    let blow = -x.low;
    let prec = if x.exact { x.cap } else { (blow + x.prec - x.low).min(x.cap) };
    if prec < blow {
        return Err(Error::PrecisionExhausted("t_x level inverse".into()));
    }
    let depth = (prec - blow).max(0) as usize;
    let mut deltas: Vec<Vec<YSer>> = Vec::new();
    for ai in &x.c {
        let mut chain = vec![ai.clone()];
        for _ in 0..depth {
            let next = delta(chain.last().unwrap());
            chain.push(next);
        }
        deltas.push(chain);
    }
    let mut b: Vec<YSer> = Vec::new();
    for jt in blow..=prec {
        let n = x.low + jt;
        let mut rhs = if n == 0 { yser_zero(a.caps).one_like() } else { yser_zero(a.caps) };
        for (ii, chain) in deltas.iter().enumerate() {
            let i = x.low + ii as i64;
            for (jj, bj) in b.iter().enumerate() {
                let j = blow + jj as i64;
                let k = n - i - j;
                if k < 0 || k as usize >= chain.len() {
                    continue;
                }
                if let Some(t) = twisted_term(&chain[k as usize], j, k, bj)? {
                    rhs = rhs.try_add(&t.neg())?;
                }
            }
        }
        b.push(rhs.try_mul(&a0inv)?);
    }
    let outer = Lau { low: blow, prec, exact: false, cap: x.cap, level: "t_x", c: b, zero: yser_zero(a.caps) };
    Ok(IterSeries { caps: a.caps, outer })
}

/// Image of a PBW element: `x^l y^m z^n ↦ t_x^{-l} t_y^{-m} t_z^{-n}`.
pub fn iter_embed(f: &PBWElem, caps: IterPrec) -> IterSeries {
    let mut acc = IterSeries::zero(caps);
    for (&(l, m, n), c) in f.terms() {
        let mono = IterSeries::monomial(caps, -(l as i64), -(m as i64), -(n as i64), c.clone());
        acc = acc.add(&mono).expect("exact sum");
    }
    acc
}

/// Evaluation of expressions over the atoms `x, y, z, V`.
pub struct IterModel {
    pub caps: IterPrec,
}

impl Model for IterModel {
    type Elem = IterSeries;

    fn atom(&self, name: &str) -> Result<IterSeries> {
        let f = match name {
            "x" => PBWElem::x(),
            "y" => PBWElem::y(),
            "z" => PBWElem::z(),
            "V" => PBWElem::v(),
            other => return Err(Error::UnboundAtom(other.to_string())),
        };
        Ok(iter_embed(&f, self.caps))
    }

    fn constant(&self, c: &Rational) -> Result<IterSeries> {
        Ok(IterSeries::monomial(self.caps, 0, 0, 0, c.clone()))
    }

    fn add(&self, a: &IterSeries, b: &IterSeries) -> Result<IterSeries> {
        a.add(b)
    }

    fn sub(&self, a: &IterSeries, b: &IterSeries) -> Result<IterSeries> {
        a.sub(b)
    }

    fn mul(&self, a: &IterSeries, b: &IterSeries) -> Result<IterSeries> {
        iter_mul(a, b)
    }

    fn inv(&self, a: &IterSeries) -> Result<IterSeries> {
        iter_invert(a)
    }

    fn scale(&self, c: &Rational, a: &IterSeries) -> Result<IterSeries> {
        Ok(a.scale(c))
    }
}

impl fmt::Display for IterSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for ((i, j, k), q) in self.known_coefficients() {
            if Zero::is_zero(&q) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}·t_x^{i}·t_y^{j}·t_z^{k}", show_rat(&q))?;
        }
        if first {
            write!(f, "0")?;
        }
        if !self.is_exact() {
            write!(f, " + …")?;
        }
        Ok(())
    }
}
