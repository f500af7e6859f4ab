//! Skew series whose coefficients are stored as values at the points
//! `τ_m = t₀ + m·c` of 𝔽_p, `p = 2^61 - 1`.
//!
//! A product coefficient at `τ_m` needs the left factor at `τ_{m+j}`, so each
//! operation shrinks the range of available `m`.

use std::collections::HashMap;

use super::expr::Model;
use super::skew::{SkewSeries, Window};
use crate::error::{Error, Result};
use crate::linalg::{addmod, invmod, mulmod, rat_mod, submod, MODULUS};
use crate::scalars::{RatFunc, Rational};

#[derive(Clone, Copy, Debug)]
pub struct SampleFrame {
    pub t0: u64,
    pub step: u64,
    pub window: Window,
}

impl SampleFrame {
    pub fn new(t0: u64, shift: &Rational, window: Window) -> Result<Self> {
        let step = rat_mod(shift).ok_or(Error::SingularSample)?;
        Ok(SampleFrame { t0: t0 % MODULUS, step, window })
    }

    pub fn point(&self, m: i64) -> u64 {
        let mm = if m >= 0 { m as u64 % MODULUS } else { MODULUS - ((-m) as u64 % MODULUS) };
        addmod(self.t0, mulmod(mm % MODULUS, self.step))
    }
}

#[derive(Clone, Debug)]
pub struct SampledSeries {
    pub low: i64,
    pub prec: i64,
    pub exact: bool,
    pub mlo: i64,
    pub mhi: i64,
    /// `vals[n - low][m - mlo]`
    pub vals: Vec<Vec<u64>>,
}

fn eval_mod(coeffs: &[u64], x: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, x), c))
}

fn ratfunc_mod(f: &RatFunc) -> Result<(Vec<u64>, Vec<u64>)> {
    let conv = |p: &crate::scalars::Poly| -> Result<Vec<u64>> {
        p.coeffs().iter().map(|c| rat_mod(c).ok_or(Error::SingularSample)).collect()
    };
    Ok((conv(f.num())?, conv(f.den())?))
}

impl SampledSeries {
    pub fn width(&self) -> i64 {
        self.mhi - self.mlo + 1
    }

    pub fn sample(s: &SkewSeries, frame: &SampleFrame, radius: i64) -> Result<Self> {
        let (mlo, mhi) = (-radius, radius);
        let pts: Vec<u64> = (mlo..=mhi).map(|m| frame.point(m)).collect();
        let mut vals = Vec::with_capacity(s.coeffs().len());
        for c in s.coeffs() {
            if c.is_zero() {
                vals.push(vec![0; pts.len()]);
                continue;
            }
            let (n, d) = ratfunc_mod(c)?;
            let row: Result<Vec<u64>> = pts
                .iter()
                .map(|&x| {
                    let dv = invmod(eval_mod(&d, x)).ok_or(Error::SingularSample)?;
                    Ok(mulmod(eval_mod(&n, x), dv))
                })
                .collect();
            vals.push(row?);
        }
        Ok(SampledSeries { low: s.low(), prec: s.prec(), exact: s.is_exact(), mlo, mhi, vals })
    }

    pub fn constant(c: u64, radius: i64) -> Self {
        let w = (2 * radius + 1) as usize;
        SampledSeries { low: 0, prec: 0, exact: true, mlo: -radius, mhi: radius, vals: vec![vec![c; w]] }
    }

    fn row(&self, n: i64) -> Option<&[u64]> {
        (n >= self.low && n <= self.prec).then(|| self.vals[(n - self.low) as usize].as_slice())
    }

    fn row_is_zero(&self, k: usize) -> bool {
        self.vals[k].iter().all(|&v| v == 0)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.vals.len()).all(|k| self.row_is_zero(k))
    }

    /// Value of the coefficient of `p^n` at `τ_m`; zero below `low`.
    pub fn value(&self, n: i64, m: i64) -> Option<u64> {
        if m < self.mlo || m > self.mhi {
            return None;
        }
        if n < self.low || (self.exact && n > self.prec) {
            return Some(0);
        }
        self.row(n).map(|r| r[(m - self.mlo) as usize])
    }

    fn check(low: i64, prec: i64, mlo: i64, mhi: i64, window: Window) -> Result<()> {
        if low < window.low {
            return Err(Error::PrecisionExhausted(format!("exponent {low} below window floor")));
        }
        if prec < low {
            return Err(Error::PrecisionExhausted(format!("empty range {low}..={prec}")));
        }
        if mhi < mlo {
            return Err(Error::SampleRangeExhausted);
        }
        Ok(())
    }

    fn trim_top(&mut self) {
        if !self.exact {
            return;
        }
        while self.vals.len() > 1 && self.row_is_zero(self.vals.len() - 1) {
            self.vals.pop();
            self.prec -= 1;
        }
    }

    pub fn add(&self, o: &SampledSeries, window: Window) -> Result<SampledSeries> {
        let low = self.low.min(o.low);
        let prec = match (self.exact, o.exact) {
            (true, true) => self.prec.max(o.prec),
            (true, false) => o.prec,
            (false, true) => self.prec,
            (false, false) => self.prec.min(o.prec),
        };
        let exact = self.exact && o.exact;
        let (prec, exact) = if prec > window.high { (window.high, false) } else { (prec, exact) };
        let (mlo, mhi) = (self.mlo.max(o.mlo), self.mhi.min(o.mhi));
        SampledSeries::check(low, prec, mlo, mhi, window)?;
        let vals = (low..=prec)
            .map(|n| (mlo..=mhi).map(|m| addmod(self.value(n, m).unwrap(), o.value(n, m).unwrap())).collect())
            .collect();
        let mut s = SampledSeries { low, prec, exact, mlo, mhi, vals };
        s.trim_top();
        Ok(s)
    }

    pub fn scale(&self, c: u64) -> SampledSeries {
        SampledSeries {
            vals: self.vals.iter().map(|r| r.iter().map(|&v| mulmod(v, c)).collect()).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> SampledSeries {
        self.scale(MODULUS - 1)
    }

    pub fn mul(&self, b: &SampledSeries, window: Window) -> Result<SampledSeries> {
        let a = self;
        let low = a.low + b.low;
        let exact = a.exact && b.exact;
        let prec = if exact {
            a.prec + b.prec
        } else {
            let pa = if a.exact { i64::MAX } else { a.prec + b.low };
            let pb = if b.exact { i64::MAX } else { b.prec + a.low };
            pa.min(pb)
        };
        let (prec, exact) = if prec > window.high { (window.high, false) } else { (prec, exact) };
        let mlo = b.mlo.max(a.mlo - b.low);
        let mhi = b.mhi.min(a.mhi - b.prec);
        SampledSeries::check(low, prec, mlo, mhi, window)?;
        let w = (mhi - mlo + 1) as usize;
        let a_nz: Vec<bool> = (0..a.vals.len()).map(|k| !a.row_is_zero(k)).collect();
        let b_nz: Vec<bool> = (0..b.vals.len()).map(|k| !b.row_is_zero(k)).collect();
        let mut vals = Vec::with_capacity((prec - low + 1) as usize);
        let mut acc = vec![0u128; w];
        for n in low..=prec {
            acc.iter_mut().for_each(|x| *x = 0);
            let mut terms = 0u32;
            for (ii, nz) in a_nz.iter().enumerate() {
                if !nz {
                    continue;
                }
                let i = a.low + ii as i64;
                let j = n - i;
                if j < b.low || j > b.prec || !b_nz[(j - b.low) as usize] {
                    continue;
                }
                let ar = &a.vals[ii][(mlo + j - a.mlo) as usize..];
                let br = &b.vals[(j - b.low) as usize][(mlo - b.mlo) as usize..];
                for k in 0..w {
                    acc[k] += (ar[k] as u128) * (br[k] as u128);
                }
                terms += 1;
                if terms == 60 {
                    acc.iter_mut().for_each(|x| *x %= MODULUS as u128);
                    terms = 0;
                }
            }
            vals.push(acc.iter().map(|&x| (x % MODULUS as u128) as u64).collect());
        }
        let mut s = SampledSeries { low, prec, exact, mlo, mhi, vals };
        s.trim_top();
        Ok(s)
    }

    pub fn invert(&self, window: Window) -> Result<SampledSeries> {
        let a = self;
        if a.is_zero() {
            return Err(Error::ZeroSeries);
        }
        if a.row_is_zero(0) {
            return Err(Error::NotAUnit(format!("coefficient of p^{} vanishes", a.low)));
        }
        let blow = -a.low;
        if a.exact && a.vals.len() == 1 {
            let (mlo, mhi) = (a.mlo - blow, a.mhi - blow);
            let row: Result<Vec<u64>> = (mlo..=mhi)
                .map(|m| invmod(a.vals[0][(m + blow - a.mlo) as usize]).ok_or(Error::SingularSample))
                .collect();
            return Ok(SampledSeries { low: blow, prec: blow, exact: true, mlo, mhi, vals: vec![row?] });
        }
        let prec = if a.exact { window.high } else { (blow + a.prec - a.low).min(window.high) };
        let mlo = a.mlo - blow;
        let mhi = a.mhi - prec;
        SampledSeries::check(blow, prec, mlo, mhi, window)?;
        let w = (mhi - mlo + 1) as usize;
        let mut vals: Vec<Vec<u64>> = Vec::with_capacity((prec - blow + 1) as usize);
        for j in blow..=prec {
            let n = a.low + j;
            let mut rhs = vec![if n == 0 { 1u64 } else { 0 }; w];
            for (k, bk) in vals.iter().enumerate() {
                let jj = blow + k as i64;
                let i = n - jj;
                let Some(ar) = a.row(i) else { continue };
                let off = (mlo + jj - a.mlo) as usize;
                for m in 0..w {
                    rhs[m] = submod(rhs[m], mulmod(ar[off + m], bk[m]));
                }
            }
            let lead = &a.vals[0][(mlo + j - a.mlo) as usize..];
            let mut row = Vec::with_capacity(w);
            for m in 0..w {
                row.push(mulmod(rhs[m], invmod(lead[m]).ok_or(Error::SingularSample)?));
            }
            vals.push(row);
        }
        Ok(SampledSeries { low: blow, prec, exact: false, mlo, mhi, vals })
    }
}

/// Evaluation of expressions into sampled series.
pub struct SampledModel {
    pub frame: SampleFrame,
    pub radius: i64,
    pub bindings: HashMap<String, SkewSeries>,
}

impl Model for SampledModel {
    type Elem = SampledSeries;

    fn atom(&self, name: &str) -> Result<SampledSeries> {
        let s = self.bindings.get(name).ok_or_else(|| Error::UnboundAtom(name.to_string()))?;
        SampledSeries::sample(s, &self.frame, self.radius)
    }

    fn constant(&self, c: &Rational) -> Result<SampledSeries> {
        Ok(SampledSeries::constant(rat_mod(c).ok_or(Error::SingularSample)?, self.radius))
    }

    fn add(&self, a: &SampledSeries, b: &SampledSeries) -> Result<SampledSeries> {
        a.add(b, self.frame.window)
    }

    fn sub(&self, a: &SampledSeries, b: &SampledSeries) -> Result<SampledSeries> {
        a.add(&b.neg(), self.frame.window)
    }

    fn mul(&self, a: &SampledSeries, b: &SampledSeries) -> Result<SampledSeries> {
        a.mul(b, self.frame.window)
    }

    fn inv(&self, a: &SampledSeries) -> Result<SampledSeries> {
        a.invert(self.frame.window)
    }

    fn scale(&self, c: &Rational, a: &SampledSeries) -> Result<SampledSeries> {
        Ok(a.scale(rat_mod(c).ok_or(Error::SingularSample)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, Poly};
    use crate::series::skew::{ss_invert, ss_mul};

    fn frame() -> SampleFrame {
        SampleFrame::new(987654321987, &int(-1), Window::default()).unwrap()
    }

    fn matches(exact: &SkewSeries, s: &SampledSeries, f: &SampleFrame) {
        assert_eq!(exact.low(), s.low);
        assert_eq!(exact.prec(), s.prec);
        for n in s.low..=s.prec {
            let c = exact.coeff(n).unwrap();
            for m in [s.mlo, (s.mlo + s.mhi) / 2, s.mhi] {
                let x = f.point(m);
                let (num, den) = ratfunc_mod(&c).unwrap();
                let v = mulmod(eval_mod(&num, x), invmod(eval_mod(&den, x)).unwrap());
                assert_eq!(s.value(n, m), Some(v), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn agrees_with_exact_arithmetic() {
        let f = frame();
        let w = Window::new(-4, 12);
        let t = RatFunc::var();
        let s = RatFunc::new(Poly::linear_root(rat(5, 6)), Poly::linear_root(rat(1, 6)));
        let a = SkewSeries::polynomial(int(-1), w, -1, vec![t.clone(), s.clone(), RatFunc::one()]);
        let b = SkewSeries::polynomial(int(-1), w, 0, vec![RatFunc::one(), RatFunc::zero(), s.clone()]);
        let sa = SampledSeries::sample(&a, &f, 200).unwrap();
        let sb = SampledSeries::sample(&b, &f, 200).unwrap();
        matches(&ss_mul(&a, &b).unwrap(), &sa.mul(&sb, w).unwrap(), &f);
        matches(&ss_invert(&b).unwrap(), &sb.invert(w).unwrap(), &f);
        let binv = ss_invert(&b).unwrap();
        let sbinv = sb.invert(w).unwrap();
        matches(&ss_mul(&binv, &a).unwrap(), &sbinv.mul(&sa, w).unwrap(), &f);
        matches(&a.add(&b).unwrap(), &sa.add(&sb, w).unwrap(), &f);
    }

    #[test]
    fn range_shrinks_and_exhausts() {
        let f = frame();
        let w = Window::default();
        let b = SkewSeries::polynomial(int(-1), w, 0, vec![RatFunc::one(), RatFunc::zero(), RatFunc::one()]);
        let sb = SampledSeries::sample(&b, &f, 10).unwrap();
        assert_eq!(sb.invert(w).unwrap_err(), Error::SampleRangeExhausted);
        let sb = SampledSeries::sample(&b, &f, 100).unwrap();
        let inv = sb.invert(w).unwrap();
        assert_eq!((inv.mlo, inv.mhi), (-100, 100 - 48));
    }
}
