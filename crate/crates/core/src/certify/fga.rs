use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use super::words::{Letter, Word};
use crate::error::{Error, Result};
use crate::scalars::{format_rat, parse_rat, Rational};

/// Element of the group algebra of a free group, keyed by reduced words.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeGroupAlgElem {
    terms: BTreeMap<Word, Rational>,
}

fn reduce_concat(a: &Word, b: &Word) -> Word {
    let mut out = a.0.clone();
    for &l in &b.0 {
        match out.last() {
            Some(&(g, e)) if g == l.0 && e == -l.1 => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    Word(out)
}

impl FreeGroupAlgElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::word(Word::default())
    }

    pub fn word(w: Word) -> Self {
        let mut e = Self::zero();
        e.add_term(w, Rational::one());
        e
    }

    pub fn letter(l: Letter) -> Self {
        Self::word(Word(vec![l]))
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        let w = reduce_concat(&Word::default(), &w);
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (w, c) in &o.terms {
            r.add_term(w.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// Inverse of a single scaled word.
    pub fn inv_monomial(&self) -> Result<Self> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit(format!("{self} is not a scaled group element")));
        }
        let (w, c) = self.terms.iter().next().unwrap();
        let inv = Word(w.0.iter().rev().map(|&(g, e)| (g, -e)).collect());
        let mut r = Self::zero();
        r.add_term(inv, Rational::one() / c);
        Ok(r)
    }

    /// Parses `g+g^-1`, `2gh - h^-1g`, `1`; letters `g`, `h` are generators 0 and 1.
    pub fn parse(s: &str) -> Result<Self> {
        let mut out = Self::zero();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty group algebra element".into()));
        }
        let mut chunks: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && prev != Some('^') && prev.is_some() {
                chunks.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if ch == '-' && prev.is_none() {
                neg = true;
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        chunks.push((neg, cur));
        for (neg, chunk) in chunks {
            let split = chunk.find(|c: char| c.is_ascii_alphabetic()).unwrap_or(chunk.len());
            let (coef, word) = chunk.split_at(split);
            let mut c = if coef.is_empty() { Rational::one() } else { parse_rat(coef)? };
            if neg {
                c = -c;
            }
            let mut letters = Vec::new();
            let mut it = word.chars().peekable();
            while let Some(ch) = it.next() {
                let g = match ch {
                    'g' => 0,
                    'h' => 1,
                    other => return Err(Error::Parse(format!("unknown letter {other:?} in {s:?}"))),
                };
                let mut e: i64 = 1;
                if it.peek() == Some(&'^') {
                    it.next();
                    let mut num = String::new();
                    while let Some(&d) = it.peek() {
                        if d == '-' || d.is_ascii_digit() {
                            num.push(d);
                            it.next();
                        } else {
                            break;
                        }
                    }
                    e = num.parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                }
                let l = if e < 0 { (g, -1) } else { (g, 1) };
                letters.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
            }
            out.add_term(Word(letters), c);
        }
        Ok(out)
    }
}

/// Convolution with free reduction of the concatenated words.
pub fn fga_mul(f: &FreeGroupAlgElem, g: &FreeGroupAlgElem) -> FreeGroupAlgElem {
    let mut out = FreeGroupAlgElem::zero();
    for (u, a) in &f.terms {
        for (v, b) in &g.terms {
            out.add_term(reduce_concat(u, v), a * b);
        }
    }
    out
}

impl fmt::Display for FreeGroupAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["g".to_string(), "h".to_string()];
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| if c.is_one() { w.render(&names) } else { format!("{}*{}", format_rat(c), w.render(&names)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
