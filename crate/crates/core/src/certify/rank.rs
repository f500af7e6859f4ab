use num::{BigInt, Zero};

use crate::linalg::{bareiss_rank, kernel, Matrix};
use crate::scalars::rational::lcm_denoms;
use crate::scalars::{Poly, RatFunc, Rational};

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    let g = Poly::gcd(a, b);
    (a * b).divrem(&g).0.monic()
}

/// Rows of ℚ-coordinates: every row of `m` is multiplied by the lcm of its
/// denominators and its polynomial entries are expanded in powers of `t`.
/// Scaling a row by a nonzero polynomial keeps the ℚ-relations between columns.
pub fn rational_coordinates(m: &[Vec<RatFunc>]) -> Matrix {
    let cols = m.first().map_or(0, |r| r.len());
    let mut out: Matrix = Vec::new();
    for row in m {
        let d = row.iter().filter(|f| !f.is_zero()).fold(Poly::one(), |acc, f| poly_lcm(&acc, f.den()));
        let polys: Vec<Poly> = row.iter().map(|f| f.num() * &d.divrem(f.den()).0).collect();
        let deg = polys.iter().filter_map(Poly::degree).max();
        let Some(deg) = deg else { continue };
        for k in 0..=deg {
            let r: Vec<Rational> = polys.iter().map(|p| p.coeff(k)).collect();
            if r.iter().any(|c| !c.is_zero()) {
                out.push(r);
            }
        }
    }
    if out.is_empty() {
        out.push(vec![Rational::zero(); cols]);
    }
    out
}

pub fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| {
            let l = lcm_denoms(r.iter());
            r.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Dimension over ℚ of the span of the columns of `m`.
pub fn rank_over_rationals(m: &[Vec<RatFunc>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    bareiss_rank(integer_rows(&rational_coordinates(m)))
}

/// A ℚ-relation between the columns, normalized to lead with 1.
pub fn column_relation(m: &[Vec<RatFunc>]) -> Option<Vec<Rational>> {
    let cols = m.first().map_or(0, |r| r.len());
    let q = rational_coordinates(m);
    let mut v = kernel(&q, cols).into_iter().next()?;
    let lead = v.iter().find(|c| !c.is_zero())?.clone();
    v.iter_mut().for_each(|c| *c = &*c / &lead);
    Some(v)
}
