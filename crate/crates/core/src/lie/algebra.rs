use std::fmt;

use num::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{identity, kernel, mat_mul, rref, solve, Matrix};
use crate::scalars::{format_rat, parse_rat, show_rat, Rational};

pub type Vector = Vec<Rational>;

/// Lie algebra by structure constants with an involution whose rows are the images of the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct LieSC {
    pub dim: usize,
    pub basis_names: Vec<String>,
    /// `table[i][j]` holds the coordinates of `[e_i, e_j]`.
    pub table: Vec<Vec<Vector>>,
    pub involution: Matrix,
    /// Problems found while reading the bracket list.
    pub parse_issues: Vec<String>,
}

/// `(i, j, [(k, coefficient)])` for `[e_i, e_j] = Σ c·e_k`.
type BracketEntry = (usize, usize, Vec<(usize, String)>);

#[derive(Serialize, Deserialize)]
struct LieFile {
    dim: usize,
    basis_names: Vec<String>,
    brackets: Vec<BracketEntry>,
    involution: Vec<Vec<String>>,
}

fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn add_vec(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale_vec(c: &Rational, a: &[Rational]) -> Vector {
    a.iter().map(|x| c * x).collect()
}

pub fn is_zero_vec(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Row-reduced basis of the span.
pub fn span(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut m: Matrix = vectors.to_vec();
    if m.is_empty() {
        return Vec::new();
    }
    let r = rref(&mut m).len();
    m.truncate(r);
    debug_assert!(m.iter().all(|v| v.len() == dim));
    m
}

pub fn in_span(basis: &[Vector], v: &[Rational]) -> bool {
    if is_zero_vec(v) {
        return true;
    }
    coords_in(basis, v).is_some()
}

/// Coordinates of `v` in the (independent) list `basis`.
pub fn coords_in(basis: &[Vector], v: &[Rational]) -> Option<Vector> {
    if basis.is_empty() {
        return is_zero_vec(v).then(Vec::new);
    }
    let m: Matrix = (0..v.len()).map(|r| basis.iter().map(|b| b[r].clone()).collect()).collect();
    solve(&m, v)
}

pub fn combine(basis: &[Vector], coords: &[Rational], dim: usize) -> Vector {
    basis.iter().zip(coords).fold(zeros(dim), |acc, (b, c)| add_vec(&acc, &scale_vec(c, b)))
}

impl LieSC {
    pub fn new(basis_names: Vec<String>, table: Vec<Vec<Vector>>, involution: Matrix) -> Self {
        LieSC { dim: basis_names.len(), basis_names, table, involution, parse_issues: Vec::new() }
    }

    /// The Heisenberg algebra `[y, x] = z` with the given involution.
    pub fn heisenberg(involution: Matrix) -> Self {
        let names = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let mut table = vec![vec![zeros(3); 3]; 3];
        let mut z = zeros(3);
        z[2] = Rational::from_integer(1.into());
        table[1][0] = z.clone();
        table[0][1] = scale_vec(&Rational::from_integer((-1).into()), &z);
        LieSC::new(names, table, involution)
    }

    pub fn basis(&self, i: usize) -> Vector {
        identity(self.dim)[i].clone()
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let mut out = zeros(self.dim);
        for (i, ui) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = ui * vj;
                for (k, t) in self.table[i][j].iter().enumerate() {
                    if !t.is_zero() {
                        out[k] += &c * t;
                    }
                }
            }
        }
        out
    }

    pub fn star(&self, v: &[Rational]) -> Vector {
        (0..self.dim)
            .map(|j| v.iter().enumerate().fold(Rational::zero(), |acc, (i, c)| acc + c * &self.involution[i][j]))
            .collect()
    }

    pub fn show(&self, v: &[Rational]) -> String {
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{}·{}", show_rat(c), self.basis_names[i]))
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let f: LieFile = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        if f.basis_names.len() != f.dim {
            return Err(Error::Parse("basis_names length differs from dim".into()));
        }
        let n = f.dim;
        let mut table = vec![vec![zeros(n); n]; n];
        let mut set = vec![vec![false; n]; n];
        let mut issues = Vec::new();
        for (i, j, entries) in &f.brackets {
            if *i >= n || *j >= n {
                return Err(Error::Parse(format!("bracket index out of range: [{i}, {j}]")));
            }
            let mut v = zeros(n);
            for (k, c) in entries {
                if *k >= n {
                    return Err(Error::Parse(format!("coordinate index {k} out of range")));
                }
                v[*k] += parse_rat(c)?;
            }
            if i == j {
                if !is_zero_vec(&v) {
                    issues.push(format!("[{0}, {0}] ≠ 0", f.basis_names[*i]));
                }
                continue;
            }
            let neg: Vector = v.iter().map(|c| -c.clone()).collect();
            for (a, b, w) in [(*i, *j, v), (*j, *i, neg)] {
                if set[a][b] && table[a][b] != w {
                    issues.push(format!("antisymmetry fails for [{}, {}]", f.basis_names[a], f.basis_names[b]));
                }
                table[a][b] = w;
                set[a][b] = true;
            }
        }
        let involution: Result<Matrix> =
            f.involution.iter().map(|r| r.iter().map(|c| parse_rat(c)).collect()).collect();
        let involution = involution?;
        if involution.len() != n || involution.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("involution must be dim × dim".into()));
        }
        Ok(LieSC { dim: n, basis_names: f.basis_names, table, involution, parse_issues: issues })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let entries: Vec<(usize, String)> = self.table[i][j]
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| (k, format_rat(c)))
                    .collect();
                if !entries.is_empty() {
                    brackets.push((i, j, entries));
                }
            }
        }
        let f = LieFile {
            dim: self.dim,
            basis_names: self.basis_names.clone(),
            brackets,
            involution: self.involution.iter().map(|r| r.iter().map(format_rat).collect()).collect(),
        };
        serde_json::to_value(f).expect("serializable")
    }

    /// `γ_1 = L`, `γ_{n+1} = [γ_n, L]`, up to the first zero term (or until the series stalls).
    pub fn lower_central_series(&self) -> Vec<Vec<Vector>> {
        let mut out = vec![identity(self.dim)];
        loop {
            let last = out.last().unwrap();
            let mut gens = Vec::new();
            for u in last {
                for i in 0..self.dim {
                    gens.push(self.bracket(u, &self.basis(i)));
                }
            }
            let next = span(&gens, self.dim);
            let stalled = next.len() == last.len();
            out.push(next);
            if out.last().unwrap().is_empty() || stalled {
                return out;
            }
        }
    }

    /// `{v : [v, e_i] = 0 for all i}`
    pub fn center(&self) -> Vec<Vector> {
        let n = self.dim;
        // rows: coordinates k of [e_c, e_i] for every i, columns c
        let mut m: Matrix = Vec::new();
        for i in 0..n {
            for k in 0..n {
                m.push((0..n).map(|c| self.table[c][i][k].clone()).collect());
            }
        }
        span(&kernel(&m, n), n)
    }

    /// Class `c` with `γ_{c+1} = 0`; `None` when not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let lcs = self.lower_central_series();
        lcs.last().unwrap().is_empty().then(|| lcs.len() - 1)
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|r| r.iter().all(|v| is_zero_vec(v)))
    }
}

impl fmt::Display for LieSC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lie algebra of dimension {} on {}", self.dim, self.basis_names.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LieReport {
    pub valid: bool,
    pub violations: Vec<String>,
    pub nilpotent: bool,
    pub class: Option<usize>,
    pub lower_central_dims: Vec<usize>,
    pub center_dim: usize,
}

pub fn validate_lie(l: &LieSC) -> LieReport {
    let n = l.dim;
    let mut violations = l.parse_issues.clone();
    let e = |i: usize| l.basis(i);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let s = add_vec(
                    &add_vec(&l.bracket(&e(i), &l.bracket(&e(j), &e(k))), &l.bracket(&e(j), &l.bracket(&e(k), &e(i)))),
                    &l.bracket(&e(k), &l.bracket(&e(i), &e(j))),
                );
                if !is_zero_vec(&s) {
                    violations.push(format!(
                        "Jacobi fails at ({}, {}, {})",
                        l.basis_names[i], l.basis_names[j], l.basis_names[k]
                    ));
                }
            }
        }
    }
    violations.extend(involution_violations(l));
    let lcs = l.lower_central_series();
    let nilpotent = lcs.last().unwrap().is_empty();
    if !nilpotent {
        violations.push("lower central series does not reach 0".into());
    }
    LieReport {
        valid: violations.is_empty(),
        violations,
        nilpotent,
        class: nilpotent.then(|| lcs.len() - 1),
        lower_central_dims: lcs.iter().map(|g| g.len()).collect(),
        center_dim: l.center().len(),
    }
}

pub fn involution_violations(l: &LieSC) -> Vec<String> {
    let n = l.dim;
    let mut out = Vec::new();
    if mat_mul(&l.involution, &l.involution) != identity(n) {
        out.push("involution does not square to the identity".into());
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (ei, ej) = (l.basis(i), l.basis(j));
            let lhs = l.star(&l.bracket(&ei, &ej));
            let rhs = l.bracket(&l.star(&ej), &l.star(&ei));
            if lhs != rhs {
                out.push(format!("[{0}, {1}]* ≠ [{1}*, {0}*]", l.basis_names[i], l.basis_names[j]));
            }
        }
    }
    out
}

/// Subalgebra generated by `gens`, with its own structure constants.
#[derive(Clone, Debug)]
pub struct SubAlgebra {
    /// Basis vectors in the coordinates of the ambient algebra.
    pub basis: Vec<Vector>,
    pub lie: LieSC,
}

impl SubAlgebra {
    pub fn to_ambient(&self, v: &[Rational]) -> Vector {
        combine(&self.basis, v, self.basis.first().map_or(0, |b| b.len()))
    }
}

pub fn subalgebra(l: &LieSC, gens: &[Vector]) -> Result<SubAlgebra> {
    let mut basis: Vec<Vector> = Vec::new();
    let push = |basis: &mut Vec<Vector>, v: Vector| -> bool {
        if in_span(basis, &v) {
            false
        } else {
            basis.push(v);
            true
        }
    };
    for g in gens {
        push(&mut basis, g.clone());
    }
    loop {
        let mut grew = false;
        let current = basis.clone();
        for a in &current {
            for b in &current {
                grew |= push(&mut basis, l.bracket(a, b));
            }
        }
        if !grew {
            break;
        }
    }
    let m = basis.len();
    let mut table = vec![vec![zeros(m); m]; m];
    for i in 0..m {
        for j in 0..m {
            table[i][j] = coords_in(&basis, &l.bracket(&basis[i], &basis[j]))
                .ok_or_else(|| Error::Internal("subalgebra is not closed".into()))?;
        }
    }
    let involution: Result<Matrix> = basis
        .iter()
        .map(|b| {
            coords_in(&basis, &l.star(b))
                .ok_or_else(|| Error::InvolutionInvalid("subalgebra is not invariant under the involution".into()))
        })
        .collect();
    let names = (0..m).map(|i| format!("s{i}")).collect();
    Ok(SubAlgebra { basis, lie: LieSC::new(names, table, involution?) })
}

/// `L / I` for an ideal `I` invariant under the involution, on a complement of standard basis vectors.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ideal: Vec<Vector>,
    pub complement: Vec<Vector>,
    pub lie: LieSC,
}

impl Quotient {
    /// Coordinates of the class of `v`.
    pub fn project(&self, v: &[Rational]) -> Vector {
        let all: Vec<Vector> = self.complement.iter().chain(&self.ideal).cloned().collect();
        let c = coords_in(&all, v).expect("complement and ideal span the algebra");
        c[..self.complement.len()].to_vec()
    }

    pub fn lift(&self, q: &[Rational]) -> Vector {
        combine(&self.complement, q, self.complement.first().map_or(0, |b| b.len()))
    }
}

pub fn quotient(l: &LieSC, ideal: &[Vector]) -> Result<Quotient> {
    let n = l.dim;
    let mut complement: Vec<Vector> = Vec::new();
    for i in 0..n {
        let e = l.basis(i);
        let mut probe: Vec<Vector> = ideal.to_vec();
        probe.extend(complement.iter().cloned());
        if !in_span(&probe, &e) {
            complement.push(e);
        }
    }
    let mut q = Quotient { ideal: ideal.to_vec(), complement, lie: LieSC::new(Vec::new(), Vec::new(), Vec::new()) };
    let table: Vec<Vec<Vector>> =
        q.complement.iter().map(|u| q.complement.iter().map(|v| q.project(&l.bracket(u, v))).collect()).collect();
    let involution: Matrix = q.complement.iter().map(|b| q.project(&l.star(b))).collect();
    let names = q
        .complement
        .iter()
        .map(|b| {
            let i = b.iter().position(|c| !c.is_zero()).unwrap();
            format!("{}+I", l.basis_names[i])
        })
        .collect();
    q.lie = LieSC::new(names, table, involution);
    for v in ideal {
        if !in_span(ideal, &l.star(v)) {
            return Err(Error::InvolutionInvalid("ideal is not invariant under the involution".into()));
        }
    }
    Ok(q)
}
