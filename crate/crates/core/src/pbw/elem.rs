use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalars::rational::{binomial_i, factorial};
use crate::scalars::{format_rat, parse_rat, show_rat, Rational};

/// Element `Σ x^l y^m z^n · c` of `U(H)`, with `y·x = x·y + z` and `z` central.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PBWElem {
    terms: BTreeMap<(u32, u32, u32), Rational>,
}

impl PBWElem {
    pub fn zero() -> Self {
        PBWElem::default()
    }

    pub fn one() -> Self {
        PBWElem::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        PBWElem::monomial(0, 0, 0, c)
    }

    pub fn monomial(l: u32, m: u32, n: u32, c: Rational) -> Self {
        let mut e = PBWElem::zero();
        e.add_term((l, m, n), c);
        e
    }

    pub fn x() -> Self {
        PBWElem::monomial(1, 0, 0, Rational::one())
    }

    pub fn y() -> Self {
        PBWElem::monomial(0, 1, 0, Rational::one())
    }

    pub fn z() -> Self {
        PBWElem::monomial(0, 0, 1, Rational::one())
    }

    /// `V = (xy + yx)/2 = xy + z/2`
    pub fn v() -> Self {
        PBWElem::monomial(1, 1, 0, Rational::one()).add(&PBWElem::monomial(0, 0, 1, Rational::new(1.into(), 2.into())))
    }

    pub fn from_terms(it: impl IntoIterator<Item = ((u32, u32, u32), Rational)>) -> Self {
        let mut e = PBWElem::zero();
        for (k, c) in it {
            e.add_term(k, c);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, l: u32, m: u32, n: u32) -> Rational {
        self.terms.get(&(l, m, n)).cloned().unwrap_or_else(Rational::zero)
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

    pub fn add_term(&mut self, k: (u32, u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &PBWElem) -> PBWElem {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn neg(&self) -> PBWElem {
        PBWElem { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }

    pub fn sub(&self, o: &PBWElem) -> PBWElem {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: &Rational) -> PBWElem {
        if s.is_zero() {
            return PBWElem::zero();
        }
        PBWElem { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn mul(&self, o: &PBWElem) -> PBWElem {
        pbw_mul(self, o)
    }

    pub fn pow(&self, e: u32) -> PBWElem {
        (0..e).fold(PBWElem::one(), |acc, _| acc.mul(self))
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|&(l, m, n)| l + m + n).max().unwrap_or(0)
    }

    /// Algebra map determined by images of `x`, `y`, `z`.
    pub fn substitute(&self, x: &PBWElem, y: &PBWElem, z: &PBWElem) -> PBWElem {
        let mut out = PBWElem::zero();
        for (&(l, m, n), c) in &self.terms {
            let t = x.pow(l).mul(&y.pow(m)).mul(&z.pow(n));
            out = out.add(&t.scale(c));
        }
        out
    }

    /// Serialized as a list of `[l, m, n, "num/den"]`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms.iter().map(|(&(l, m, n), c)| serde_json::json!([l, m, n, format_rat(c)])).collect(),
        )
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Parse("PBW term must be [l, m, n, \"num/den\"]".into());
        let arr = v.as_array().ok_or_else(bad)?;
        let mut out = PBWElem::zero();
        for t in arr {
            let t = t.as_array().filter(|t| t.len() == 4).ok_or_else(bad)?;
            let e = |i: usize| t[i].as_u64().map(|v| v as u32).ok_or_else(bad);
            out.add_term((e(0)?, e(1)?, e(2)?), parse_rat(t[3].as_str().ok_or_else(bad)?)?);
        }
        Ok(out)
    }
}

impl Serialize for PBWElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PBWElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        PBWElem::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Normal-form product via `y^b x^d = Σ_k C(b,k) C(d,k) k! x^{d-k} y^{b-k} z^k`.
pub fn pbw_mul(f: &PBWElem, g: &PBWElem) -> PBWElem {
    let mut out = PBWElem::zero();
    for (&(l, m, n), c) in &f.terms {
        for (&(l2, m2, n2), d) in &g.terms {
            let cd = c * d;
            for k in 0..=m.min(l2) {
                let w = binomial_i(m as i64, k as i64) * binomial_i(l2 as i64, k as i64);
                let coef = Rational::from_integer(factorial(k) * w);
                out.add_term((l + l2 - k, m + m2 - k, n + n2 + k), &cd * coef);
            }
        }
    }
    out
}

/// Independent product: expand to words and rewrite `yx → xy + z`, `zx → xz`, `zy → yz`.
pub fn pbw_naive_mul(f: &PBWElem, g: &PBWElem) -> PBWElem {
    let word = |&(l, m, n): &(u32, u32, u32)| -> Vec<u8> {
        let mut w = vec![b'x'; l as usize];
        w.extend(std::iter::repeat_n(b'y', m as usize));
        w.extend(std::iter::repeat_n(b'z', n as usize));
        w
    };
    let rank = |c: u8| match c {
        b'x' => 0,
        b'y' => 1,
        _ => 2,
    };
    let inversions = |w: &[u8]| -> usize {
        let mut s = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if rank(w[i]) > rank(w[j]) {
                    s += 1;
                }
            }
        }
        s
    };
    // key (length, inversions, word) strictly decreases under every rewrite
    let mut pending: BTreeMap<(usize, usize, Vec<u8>), Rational> = BTreeMap::new();
    let push = |pending: &mut BTreeMap<(usize, usize, Vec<u8>), Rational>, w: Vec<u8>, c: Rational| {
        let key = (w.len(), inversions(&w), w);
        let e = pending.entry(key).or_insert_with(Rational::zero);
        *e += c;
    };
    for (a, c) in &f.terms {
        for (b, d) in &g.terms {
            let mut w = word(a);
            w.extend(word(b));
            push(&mut pending, w, c * d);
        }
    }
    let mut out = PBWElem::zero();
    while let Some(((_, _, w), c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        match (0..w.len().saturating_sub(1)).find(|&i| rank(w[i]) > rank(w[i + 1])) {
            None => {
                let count = |ch| w.iter().filter(|&&x| x == ch).count() as u32;
                out.add_term((count(b'x'), count(b'y'), count(b'z')), c);
            }
            Some(i) => {
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                if w[i] == b'y' && w[i + 1] == b'x' {
                    let mut zw = w[..i].to_vec();
                    zw.push(b'z');
                    zw.extend_from_slice(&w[i + 2..]);
                    push(&mut pending, zw, c.clone());
                }
                push(&mut pending, swapped, c);
            }
        }
    }
    out
}

impl fmt::Display for PBWElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(l, m, n), c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mut mono = String::new();
            for (v, e) in [("x", l), ("y", m), ("z", n)] {
                match e {
                    0 => {}
                    1 => mono.push_str(v),
                    _ => mono.push_str(&format!("{v}^{e}")),
                }
            }
            let a = c.abs();
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

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::scalars::{int, rat};
    use proptest::prelude::*;

    pub fn pbw_strategy(max_deg: u32) -> impl Strategy<Value = PBWElem> {
        prop::collection::vec(((0..=max_deg, 0..=max_deg, 0..=max_deg), -4i64..5, 1i64..3), 1..4).prop_map(move |ts| {
            PBWElem::from_terms(
                ts.into_iter()
                    .filter(|&((l, m, n), _, _)| l + m + n <= max_deg)
                    .map(|((l, m, n), a, b)| ((l, m, n), rat(a, b))),
            )
        })
    }

    #[test]
    fn defining_relation() {
        let yx = PBWElem::y().mul(&PBWElem::x());
        assert_eq!(yx, PBWElem::monomial(1, 1, 0, int(1)).add(&PBWElem::z()));
        assert_eq!(pbw_naive_mul(&PBWElem::y(), &PBWElem::x()), yx);
    }

    #[test]
    fn y_squared_times_x() {
        let expect = PBWElem::monomial(1, 2, 0, int(1)).add(&PBWElem::monomial(0, 1, 1, int(2)));
        assert_eq!(PBWElem::y().pow(2).mul(&PBWElem::x()), expect);
        assert_eq!(pbw_naive_mul(&PBWElem::y().pow(2), &PBWElem::x()), expect);
    }

    #[test]
    fn square_of_sum() {
        let s = PBWElem::x().add(&PBWElem::y());
        let expect =
            PBWElem::from_terms([((2, 0, 0), int(1)), ((1, 1, 0), int(2)), ((0, 2, 0), int(1)), ((0, 0, 1), int(1))]);
        assert_eq!(pbw_naive_mul(&s, &s), expect);
        assert_eq!(pbw_mul(&s, &s), expect);
    }

    #[test]
    fn v_is_symmetrized() {
        let xy = PBWElem::x().mul(&PBWElem::y());
        let yx = PBWElem::y().mul(&PBWElem::x());
        assert_eq!(xy.add(&yx).scale(&rat(1, 2)), PBWElem::v());
    }

    #[test]
    fn json_round_trip() {
        let f = PBWElem::v().sub(&PBWElem::z().scale(&rat(1, 3)));
        let j = f.to_json();
        assert_eq!(j, serde_json::json!([[0, 0, 1, "1/6"], [1, 1, 0, "1/1"]]));
        assert_eq!(PBWElem::from_json(&j).unwrap(), f);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn associativity(a in pbw_strategy(4), b in pbw_strategy(4), c in pbw_strategy(4)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn z_is_central(f in pbw_strategy(5)) {
            prop_assert_eq!(PBWElem::z().mul(&f), f.mul(&PBWElem::z()));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn closed_form_matches_rewriting(a in pbw_strategy(6), b in pbw_strategy(6)) {
            prop_assert_eq!(pbw_mul(&a, &b), pbw_naive_mul(&a, &b));
        }
    }
}
