use serde::Serialize;

use super::algebra::{involution_violations, is_zero_vec, quotient, scale_vec, span, subalgebra, LieSC, Vector};
use crate::error::{Error, Result};
use crate::linalg::{identity, Matrix};
use crate::scalars::{rat, Rational};

/// `x, y` with `[y, x] ≠ 0` spanning a Heisenberg subalgebra invariant under the involution.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeisenbergPair {
    pub x: Vec<String>,
    pub y: Vec<String>,
    pub z: Vec<String>,
    pub case: String,
    /// Steps taken, outermost first.
    pub path: Vec<String>,
    #[serde(skip)]
    pub xv: Vector,
    #[serde(skip)]
    pub yv: Vector,
}

fn sign_case(ex: i8, ey: i8) -> &'static str {
    match (ex, ey) {
        (1, -1) => "x*=x, y*=-y",
        (1, 1) => "x*=x, y*=y",
        _ => "x*=-x, y*=-y",
    }
}

pub fn find_invariant_heisenberg(l: &LieSC) -> Result<HeisenbergPair> {
    let bad = involution_violations(l);
    if !bad.is_empty() {
        return Err(Error::InvolutionInvalid(bad.join("; ")));
    }
    let class = l.nilpotency_class().ok_or(Error::NotNilpotent)?;
    if class < 2 {
        return Err(Error::Abelian);
    }
    let mut path = Vec::new();
    let (x, y, case) = search(l, class, &mut path)?;
    let fmt = |v: &Vector| v.iter().map(crate::scalars::format_rat).collect();
    let z = l.bracket(&y, &x);
    let pair = HeisenbergPair { x: fmt(&x), y: fmt(&y), z: fmt(&z), case, path, xv: x, yv: y };
    audit_pair(l, &pair.xv, &pair.yv, &pair.case)?;
    Ok(pair)
}

fn search(l: &LieSC, class: usize, path: &mut Vec<String>) -> Result<(Vector, Vector, String)> {
    if class == 2 {
        path.push(format!("class 2 in dimension {}", l.dim));
        return class_two(l);
    }
    path.push(format!("class {class}: pass to L/C"));
    let q = quotient(l, &l.center())?;
    let qclass = q.lie.nilpotency_class().ok_or(Error::NotNilpotent)?;
    let (xq, yq, _) = search(&q.lie, qclass, path)?;
    let (x, y) = (q.lift(&xq), q.lift(&yq));
    let mut gens = vec![x.clone(), y.clone()];
    gens.extend(l.center());
    let m = subalgebra(l, &gens)?;
    let mclass = m.lie.nilpotency_class().ok_or(Error::NotNilpotent)?;
    let (sub, tag) = if mclass <= 2 {
        (m, "M = <x, y, C> has class 2".to_string())
    } else {
        let z = l.bracket(&y, &x);
        let w = if !is_zero_vec(&l.bracket(&x, &z)) { x } else { y };
        let k = subalgebra(l, &[w.clone(), l.star(&w), z.clone(), l.star(&z)])?;
        (k, "M has class 3: K = <w, w*, z, z*>".to_string())
    };
    path.push(tag);
    let (xs, ys, case) = class_two(&sub.lie)?;
    Ok((sub.to_ambient(&xs), sub.to_ambient(&ys), case))
}

/// Eigenvectors of the induced map on `L/C` via the projectors `(id ± φ)/2`.
pub fn eigen_split(l: &LieSC) -> Result<(Vec<Vector>, Vec<Vector>, super::algebra::Quotient)> {
    let q = quotient(l, &l.center())?;
    let m = q.lie.dim;
    let phi: &Matrix = &q.lie.involution;
    let id = identity(m);
    let half = rat(1, 2);
    let proj = |sign: i64| -> Vec<Vector> {
        let rows: Vec<Vector> = (0..m)
            .map(|i| (0..m).map(|j| &half * (&id[i][j] + Rational::from_integer(sign.into()) * &phi[i][j])).collect())
            .collect();
        let mut picked: Vec<Vector> = Vec::new();
        for r in rows {
            let mut trial = picked.clone();
            trial.push(r.clone());
            if span(&trial, m).len() > picked.len() {
                picked.push(r);
            }
        }
        picked
    };
    Ok((proj(1), proj(-1), q))
}

fn class_two(l: &LieSC) -> Result<(Vector, Vector, String)> {
    let (plus, minus, q) = eigen_split(l)?;
    let eig: Vec<(Vector, i8)> =
        plus.into_iter().map(|v| (q.lift(&v), 1)).chain(minus.into_iter().map(|v| (q.lift(&v), -1))).collect();
    for i in 0..eig.len() {
        for j in (i + 1)..eig.len() {
            let (u1, e1) = &eig[i];
            let (u2, e2) = &eig[j];
            if is_zero_vec(&l.bracket(u1, u2)) {
                continue;
            }
            let sym = |u: &Vector, e: i8| -> Vector {
                let s = scale_vec(&Rational::from_integer((e as i64).into()), &l.star(u));
                scale_vec(&rat(1, 2), &u.iter().zip(&s).map(|(a, b)| a + b).collect::<Vector>())
            };
            let (mut x, mut y, mut ex, mut ey) = (sym(u1, *e1), sym(u2, *e2), *e1, *e2);
            if (ex, ey) == (-1, 1) {
                std::mem::swap(&mut x, &mut y);
                std::mem::swap(&mut ex, &mut ey);
            }
            return Ok((x, y, sign_case(ex, ey).to_string()));
        }
    }
    Err(Error::Abelian)
}

/// Rechecks the postconditions from the structure constants alone.
pub fn audit_pair(l: &LieSC, x: &[Rational], y: &[Rational], case: &str) -> Result<()> {
    let z = l.bracket(y, x);
    let fail = |m: &str| Err(Error::Internal(format!("audit failed: {m}")));
    if is_zero_vec(&z) {
        return fail("[y, x] = 0");
    }
    if !is_zero_vec(&l.bracket(x, &z)) || !is_zero_vec(&l.bracket(y, &z)) {
        return fail("[y, x] is not central in <x, y>");
    }
    let neg = |v: &[Rational]| -> Vector { v.iter().map(|c| -c.clone()).collect() };
    let (xs, ys) = (l.star(x), l.star(y));
    let ok = match case {
        "x*=x, y*=-y" => xs == x && ys == neg(y),
        "x*=x, y*=y" => xs == x && ys == y,
        "x*=-x, y*=-y" => xs == neg(x) && ys == neg(y),
        _ => false,
    };
    if !ok {
        return fail(&format!("involution case {case:?} does not hold"));
    }
    Ok(())
}
