use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::{ratfunc_shift, RatFunc, Rational};

/// Range of `p`-exponents a computation may use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub low: i64,
    pub high: i64,
}

impl Default for Window {
    fn default() -> Self {
        Window { low: -16, high: 48 }
    }
}

impl Window {
    pub fn new(low: i64, high: i64) -> Self {
        Window { low, high }
    }

    pub fn meet(self, o: Window) -> Window {
        Window { low: self.low.max(o.low), high: self.high.min(o.high) }
    }
}

/// Truncated skew Laurent series `Σ p^n · a_n(t)` with `a·p = p·σ(a)`, `σ(t) = t + shift`.
///
/// Coefficients `low..=prec` are known. When `exact` is set every coefficient
/// above `prec` is zero, so the value is a Laurent polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewSeries {
    shift: Rational,
    window: Window,
    low: i64,
    prec: i64,
    coeffs: Vec<RatFunc>,
    exact: bool,
}

impl SkewSeries {
    /// Exact Laurent polynomial with coefficients starting at `p^low`.
    pub fn polynomial(shift: Rational, window: Window, low: i64, coeffs: Vec<RatFunc>) -> Self {
        let prec = low + coeffs.len().max(1) as i64 - 1;
        let coeffs = if coeffs.is_empty() { vec![RatFunc::zero()] } else { coeffs };
        let mut s = SkewSeries { shift, window, low, prec, coeffs, exact: true };
        s.trim_top();
        s.trim();
        s
    }

    /// Series known only through `p^prec`.
    pub fn truncated(shift: Rational, window: Window, low: i64, prec: i64, coeffs: Vec<RatFunc>) -> Result<Self> {
        if prec < low {
            return Err(Error::PrecisionExhausted(format!("empty range {low}..={prec}")));
        }
        let mut coeffs = coeffs;
        coeffs.resize((prec - low + 1) as usize, RatFunc::zero());
        Ok(SkewSeries { shift, window, low, prec, coeffs, exact: false })
    }

    pub fn constant(shift: Rational, window: Window, f: RatFunc) -> Self {
        SkewSeries::polynomial(shift, window, 0, vec![f])
    }

    pub fn one(shift: Rational, window: Window) -> Self {
        SkewSeries::constant(shift, window, RatFunc::one())
    }

    /// `p^k · f`
    pub fn monomial(shift: Rational, window: Window, k: i64, f: RatFunc) -> Self {
        SkewSeries::polynomial(shift, window, k, vec![f])
    }

    pub fn shift(&self) -> &Rational {
        &self.shift
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Coefficient of `p^n`; `None` above the known range.
    pub fn coeff(&self, n: i64) -> Option<RatFunc> {
        if n < self.low {
            Some(RatFunc::zero())
        } else if n <= self.prec {
            Some(self.coeffs[(n - self.low) as usize].clone())
        } else if self.exact {
            Some(RatFunc::zero())
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Drops leading zero coefficients (keeping at least one stored entry).
    pub fn trim(&mut self) {
        let z = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        let z = z.min(self.coeffs.len() - 1);
        if z > 0 {
            self.coeffs.drain(..z);
            self.low += z as i64;
        }
    }

    fn trim_top(&mut self) {
        if !self.exact {
            return;
        }
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
            self.prec -= 1;
        }
    }

    pub fn trimmed(mut self) -> Self {
        self.trim();
        self
    }

    fn check_shift(&self, o: &SkewSeries) -> Result<()> {
        if self.shift != o.shift {
            return Err(Error::ShiftMismatch);
        }
        Ok(())
    }

    fn finish(
        shift: Rational,
        window: Window,
        low: i64,
        prec: i64,
        exact: bool,
        f: impl Fn(i64) -> RatFunc,
    ) -> Result<Self> {
        if low < window.low {
            return Err(Error::PrecisionExhausted(format!(
                "lowest exponent {low} is below the window floor {}",
                window.low
            )));
        }
        let (prec, exact) = if prec > window.high { (window.high, false) } else { (prec, exact) };
        if prec < low {
            return Err(Error::PrecisionExhausted(format!("empty range {low}..={prec}")));
        }
        let coeffs = (low..=prec).map(f).collect();
        let mut s = SkewSeries { shift, window, low, prec, coeffs, exact };
        s.trim_top();
        Ok(s)
    }

    pub fn add(&self, o: &SkewSeries) -> Result<SkewSeries> {
        self.check_shift(o)?;
        let low = self.low.min(o.low);
        let prec = match (self.exact, o.exact) {
            (true, true) => self.prec.max(o.prec),
            (true, false) => o.prec,
            (false, true) => self.prec,
            (false, false) => self.prec.min(o.prec),
        };
        let window = self.window.meet(o.window);
        let mut s = SkewSeries::finish(self.shift.clone(), window, low, prec, self.exact && o.exact, |n| {
            &self.coeff(n).unwrap() + &o.coeff(n).unwrap()
        })?;
        s.trim();
        Ok(s)
    }

    pub fn neg(&self) -> SkewSeries {
        SkewSeries { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, o: &SkewSeries) -> Result<SkewSeries> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Rational) -> SkewSeries {
        SkewSeries { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect(), ..self.clone() }
    }
}

/// Product in `K(p;σ)`: the coefficient of `p^n` is `Σ_{i+j=n} σ^j(a_i)·b_j`.
pub fn ss_mul(a: &SkewSeries, b: &SkewSeries) -> Result<SkewSeries> {
    a.check_shift(b)?;
    let low = a.low + b.low;
    let exact = a.exact && b.exact;
    let prec = if exact {
        a.prec + b.prec
    } else {
        let pa = if a.exact { i64::MAX } else { a.prec + b.low };
        let pb = if b.exact { i64::MAX } else { b.prec + a.low };
        pa.min(pb)
    };
    let window = a.window.meet(b.window);
    let c = a.shift.clone();
    SkewSeries::finish(c.clone(), window, low, prec, exact, |n| {
        let mut acc = RatFunc::zero();
        for (ii, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let i = a.low + ii as i64;
            let j = n - i;
            if j < b.low || j > b.prec {
                continue;
            }
            let bj = &b.coeffs[(j - b.low) as usize];
            if bj.is_zero() {
                continue;
            }
            acc = &acc + &(&ratfunc_shift(ai, j, &c) * bj);
        }
        acc
    })
}

/// Two-sided inverse to the tracked precision; `b.low = -a.low`.
pub fn ss_invert(a: &SkewSeries) -> Result<SkewSeries> {
    if a.is_zero() {
        return Err(Error::ZeroSeries);
    }
    let a0 = &a.coeffs[0];
    if a0.is_zero() {
        return Err(Error::NotAUnit(format!("coefficient of p^{} is zero", a.low)));
    }
    let c = &a.shift;
    let blow = -a.low;
    if a.exact && a.coeffs.len() == 1 {
        let f = ratfunc_shift(&a0.inv().unwrap(), blow, c);
        return Ok(SkewSeries::monomial(c.clone(), a.window, blow, f));
    }
    let prec = if a.exact { a.window.high } else { (blow + a.prec - a.low).min(a.window.high) };
    if blow < a.window.low || prec < blow {
        return Err(Error::PrecisionExhausted(format!("inverse range {blow}..={prec}")));
    }
    let mut b: Vec<RatFunc> = Vec::with_capacity((prec - blow + 1) as usize);
    for j in blow..=prec {
        let n = a.low + j;
        let mut rhs = if n == 0 { RatFunc::one() } else { RatFunc::zero() };
        for (k, bk) in b.iter().enumerate() {
            let jj = blow + k as i64;
            let i = n - jj;
            if let Some(ai) = a.coeff(i) {
                if !ai.is_zero() && !bk.is_zero() {
                    rhs = &rhs - &(&ratfunc_shift(&ai, jj, c) * bk);
                }
            }
        }
        let lead = ratfunc_shift(a0, j, c);
        b.push(&rhs / &lead);
    }
    SkewSeries::truncated(c.clone(), a.window, blow, prec, b)
}

impl SkewSeries {
    /// Coefficients agree wherever both are known.
    pub fn agrees_with(&self, o: &SkewSeries) -> bool {
        if self.shift != o.shift {
            return false;
        }
        let lo = self.low.min(o.low);
        let hi = match (self.exact, o.exact) {
            (true, true) => self.prec.max(o.prec),
            (true, false) => o.prec,
            (false, true) => self.prec,
            (false, false) => self.prec.min(o.prec),
        };
        (lo..=hi).all(|n| self.coeff(n) == o.coeff(n))
    }

    pub fn is_one(&self) -> bool {
        let one = SkewSeries::one(self.shift.clone(), self.window);
        self.agrees_with(&one)
    }
}

impl fmt::Display for SkewSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let n = self.low + k as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let body = if c.is_constant() { c.to_string() } else { format!("({c})") };
            match n {
                0 => write!(f, "{body}")?,
                1 => write!(f, "p·{body}")?,
                _ => write!(f, "p^{n}·{body}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        if !self.exact {
            write!(f, " + O(p^{})", self.prec + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat, Poly};
    use proptest::prelude::*;

    fn w() -> Window {
        Window::default()
    }

    fn weyl(low: i64, cs: Vec<RatFunc>) -> SkewSeries {
        SkewSeries::polynomial(int(-1), w(), low, cs)
    }

    fn t() -> RatFunc {
        RatFunc::var()
    }

    fn lin(r: Rational) -> RatFunc {
        RatFunc::from_poly(Poly::linear_root(r))
    }

    fn k(n: i64) -> RatFunc {
        RatFunc::constant(int(n))
    }

    #[test]
    fn t_times_p_twists() {
        let a = weyl(0, vec![t()]);
        let p = weyl(1, vec![k(1)]);
        let prod = ss_mul(&a, &p).unwrap();
        assert_eq!(prod, weyl(1, vec![lin(int(1))]));
    }

    #[test]
    fn identity_product() {
        let f = weyl(-2, vec![t(), k(3), lin(rat(1, 2))]);
        assert_eq!(ss_mul(&SkewSeries::one(int(-1), w()), &f).unwrap(), f);
        assert_eq!(ss_mul(&f, &SkewSeries::one(int(-1), w())).unwrap(), f);
    }

    #[test]
    fn p_inverse_t_squared() {
        let x = weyl(-1, vec![t()]);
        let sq = ss_mul(&x, &x).unwrap();
        let expected = &lin(int(-1)) * &t();
        assert_eq!(sq, weyl(-2, vec![expected]));
    }

    #[test]
    fn geometric_inverse() {
        let a = SkewSeries::truncated(int(-1), w(), 0, 6, vec![k(1), k(0), k(1)]).unwrap();
        let b = ss_invert(&a).unwrap();
        let expect =
            SkewSeries::truncated(int(-1), w(), 0, 6, vec![k(1), k(0), k(-1), k(0), k(1), k(0), k(-1)]).unwrap();
        assert_eq!(b, expect);
        assert!(ss_mul(&a, &b).unwrap().is_one());
        assert_eq!(ss_mul(&a, &b).unwrap().prec(), 6);
    }

    #[test]
    fn scalar_inverse_is_exact() {
        let a = weyl(0, vec![lin(rat(1, 6))]);
        let b = ss_invert(&a).unwrap();
        assert!(b.is_exact());
        assert_eq!(b.coeff(0).unwrap(), lin(rat(1, 6)).inv().unwrap());
    }

    #[test]
    fn cayley_expansion() {
        let num = SkewSeries::truncated(int(-1), w(), 0, 6, vec![k(1), k(0), k(-1)]).unwrap();
        let den = SkewSeries::truncated(int(-1), w(), 0, 6, vec![k(1), k(0), k(1)]).unwrap();
        let u = ss_mul(&num, &ss_invert(&den).unwrap()).unwrap();
        let coeffs: Vec<_> = (0..=6).map(|n| u.coeff(n).unwrap()).collect();
        assert_eq!(coeffs, vec![k(1), k(0), k(-2), k(0), k(2), k(0), k(-2)]);
        assert!(ss_mul(&u, &den).unwrap().agrees_with(&num));
    }

    #[test]
    fn inverse_errors() {
        let z = SkewSeries::truncated(int(-1), w(), 0, 3, vec![]).unwrap();
        assert_eq!(ss_invert(&z), Err(Error::ZeroSeries));
        let lead0 = SkewSeries::truncated(int(-1), w(), 0, 3, vec![k(0), k(1)]).unwrap();
        assert!(matches!(ss_invert(&lead0), Err(Error::NotAUnit(_))));
        assert!(ss_invert(&lead0.trimmed()).is_ok());
    }

    #[test]
    fn shift_mismatch() {
        let a = SkewSeries::one(int(-1), w());
        let b = SkewSeries::one(int(1), w());
        assert_eq!(ss_mul(&a, &b), Err(Error::ShiftMismatch));
    }

    #[test]
    fn exact_product_past_window_truncates() {
        let narrow = Window::new(-4, 4);
        let a = SkewSeries::polynomial(int(-1), narrow, 0, vec![k(1), k(0), k(0), k(1)]);
        let sq = ss_mul(&a, &a).unwrap();
        assert!(!sq.is_exact());
        assert_eq!(sq.prec(), 4);
        assert_eq!(sq.coeff(3).unwrap(), k(2));
    }

    fn small_rf() -> impl Strategy<Value = RatFunc> {
        (-3i64..4, -3i64..4, 1i64..4).prop_map(|(a, b, d)| {
            let num = Poly::new(vec![int(a), int(b)]);
            let den = Poly::linear_root(rat(1, 2 * d + 1));
            RatFunc::new(num, den)
        })
    }

    fn series(shift: i64) -> impl Strategy<Value = SkewSeries> {
        (-2i64..3, prop::collection::vec(small_rf(), 1..4), 4i64..8)
            .prop_map(move |(low, cs, prec)| SkewSeries::truncated(int(shift), w(), low, low + prec, cs).unwrap())
    }

    fn unit(shift: i64) -> impl Strategy<Value = SkewSeries> {
        (-2i64..3, prop::collection::vec(small_rf(), 1..4), 4i64..8, 1i64..5).prop_map(move |(low, mut cs, prec, c)| {
            cs[0] = RatFunc::from_poly(Poly::linear_root(rat(c, 7)));
            SkewSeries::truncated(int(shift), w(), low, low + prec, cs).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn associativity(a in series(-1), b in series(-1), c in series(-1)) {
            let l = ss_mul(&ss_mul(&a, &b).unwrap(), &c).unwrap();
            let r = ss_mul(&a, &ss_mul(&b, &c).unwrap()).unwrap();
            prop_assert!(l.agrees_with(&r));
        }

        #[test]
        fn monomial_twist(i in -3i64..4, j in -3i64..4, a in small_rf(), b in small_rf(), c in -2i64..3) {
            let sa = SkewSeries::monomial(int(c), w(), i, a.clone());
            let sb = SkewSeries::monomial(int(c), w(), j, b.clone());
            let prod = ss_mul(&sa, &sb).unwrap();
            let expect = &ratfunc_shift(&a, j, &int(c)) * &b;
            prop_assert_eq!(prod, SkewSeries::monomial(int(c), w(), i + j, expect));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn inverse_both_sides(a in unit(-1)) {
            let b = ss_invert(&a).unwrap();
            prop_assert!(ss_mul(&a, &b).unwrap().is_one());
            prop_assert!(ss_mul(&b, &a).unwrap().is_one());
        }
    }
}
