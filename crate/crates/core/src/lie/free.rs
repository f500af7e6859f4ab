//! Free nilpotent Lie algebras of class at most 3, realized inside the
//! truncated free associative algebra and written in a Hall basis.

use std::collections::BTreeMap;

use num::{One, Zero};

use super::algebra::{LieSC, Vector};
use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::scalars::Rational;

type Assoc = BTreeMap<Vec<usize>, Rational>;

fn commutator(a: &Assoc, b: &Assoc, cap: usize) -> Assoc {
    let mut out = Assoc::new();
    for (u, c) in a {
        for (v, d) in b {
            if u.len() + v.len() > cap {
                continue;
            }
            let uv: Vec<usize> = u.iter().chain(v).copied().collect();
            let vu: Vec<usize> = v.iter().chain(u).copied().collect();
            *out.entry(uv).or_insert_with(Rational::zero) += c * d;
            *out.entry(vu).or_insert_with(Rational::zero) -= c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Basis: generators `e_i`; `[e_j, e_i]` for `j > i`; `[[e_j, e_i], e_k]` for `j > i`, `k ≥ i`.
/// The involution is the principal one, `v* = -v`.
pub fn free_nilpotent(generators: usize, class: usize) -> Result<LieSC> {
    if !(1..=3).contains(&class) || generators == 0 {
        return Err(Error::Internal("free nilpotent algebras are built for class 1 to 3".into()));
    }
    let mut names: Vec<String> = Vec::new();
    let mut elems: Vec<Assoc> = Vec::new();
    let gen_name = |i: usize| format!("e{}", i + 1);
    for i in 0..generators {
        names.push(gen_name(i));
        elems.push(Assoc::from([(vec![i], Rational::one())]));
    }
    if class >= 2 {
        for i in 0..generators {
            for j in (i + 1)..generators {
                names.push(format!("[{},{}]", gen_name(j), gen_name(i)));
                elems.push(commutator(&elems[j], &elems[i], class));
            }
        }
    }
    if class >= 3 {
        for i in 0..generators {
            for j in (i + 1)..generators {
                let inner = commutator(&elems[j], &elems[i], class);
                for k in i..generators {
                    names.push(format!("[[{},{}],{}]", gen_name(j), gen_name(i), gen_name(k)));
                    elems.push(commutator(&inner, &elems[k], class));
                }
            }
        }
    }
    let n = elems.len();
    let words: Vec<Vec<usize>> = {
        let mut w: Vec<Vec<usize>> = elems.iter().flat_map(|e| e.keys().cloned()).collect();
        w.sort();
        w.dedup();
        w
    };
    let m: Matrix = words
        .iter()
        .map(|w| elems.iter().map(|e| e.get(w).cloned().unwrap_or_else(Rational::zero)).collect())
        .collect();
    let express = |a: &Assoc| -> Result<Vector> {
        if a.is_empty() {
            return Ok(vec![Rational::zero(); n]);
        }
        if a.keys().any(|w| !words.contains(w)) {
            return Err(Error::Internal("bracket leaves the span of the basis".into()));
        }
        let rhs: Vec<Rational> = words.iter().map(|w| a.get(w).cloned().unwrap_or_else(Rational::zero)).collect();
        solve(&m, &rhs).ok_or_else(|| Error::Internal("bracket leaves the span of the basis".into()))
    };
    let mut table = vec![vec![vec![Rational::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = express(&commutator(&elems[i], &elems[j], class))?;
        }
    }
    let involution: Matrix =
        (0..n).map(|i| (0..n).map(|j| if i == j { -Rational::one() } else { Rational::zero() }).collect()).collect();
    Ok(LieSC::new(names, table, involution))
}
