use crate::error::{Error, Result};
use crate::scalars::{int, rat};
use crate::series::expr::FracExpr;

fn a(n: &str) -> FracExpr {
    FracExpr::atom(n)
}

fn k(n: i64) -> FracExpr {
    FracExpr::int(n)
}

fn v_minus() -> FracExpr {
    a("V").sub(&a("z").scale(rat(1, 3)))
}

fn v_plus() -> FracExpr {
    a("V").add(&a("z").scale(rat(1, 3)))
}

/// `(V - z/3)(V + z/3)⁻¹ + (V - z/3)⁻¹(V + z/3)`
fn sym_core() -> FracExpr {
    v_minus().mul(&v_plus().inv()).add(&v_minus().inv().mul(&v_plus()))
}

fn y_pair(deg: u32) -> (FracExpr, FracExpr) {
    let (zz, yy) = if deg == 2 { (a("z"), a("y").pow(2)) } else { (a("z").pow(2), a("y").pow(3)) };
    (zz.add(&yy), zz.sub(&yy))
}

/// `(w + v)⁻¹ (w - v) · inner · (w + v)(w - v)⁻¹`
fn twisted(inner: FracExpr, deg: u32) -> FracExpr {
    let (plus, minus) = y_pair(deg);
    FracExpr::product(&[plus.inv(), minus.clone(), inner, plus, minus.inv()])
}

fn s() -> FracExpr {
    v_minus().mul(&v_plus().inv())
}

fn s1() -> FracExpr {
    FracExpr::product(&[a("z").inv(), sym_core(), a("z").inv()])
}

fn s2() -> FracExpr {
    FracExpr::product(&[a("z"), sym_core(), a("z")])
}

fn cauchon_s() -> FracExpr {
    a("t").sub(&FracExpr::konst(rat(5, 6))).mul(&a("t").sub(&FracExpr::konst(rat(1, 6))).inv())
}

fn cayley(p: FracExpr) -> FracExpr {
    k(1).sub(&p).mul(&k(1).add(&p).inv())
}

/// Names over atoms `x, y, z, V` (Heisenberg) and `t, p` (Weyl level).
pub const ELEMENT_NAMES: &[&str] = &[
    "S",
    "T",
    "S1",
    "S2",
    "T1",
    "T2",
    "T3",
    "T4",
    "cauchon_s",
    "cauchon_u",
    "u1",
    "cauchon_conj",
    "cauchon_sym",
    "cauchon_conj_sym",
    "cauchon_conj1_sym",
];

pub const SOLVABLE_NAMES: &[&str] = &["s2dim", "u2dim", "conj2dim"];

pub fn build_element(name: &str) -> Result<FracExpr> {
    let u = || cayley(a("p").pow(2));
    let u1 = || cayley(a("p").pow(3));
    let sym = || cauchon_s().add(&cauchon_s().inv());
    Ok(match name {
        "S" => s(),
        "T" => twisted(s(), 2),
        "S1" => s1(),
        "S2" => s2(),
        "T1" => twisted(s1(), 2),
        "T2" => twisted(s1(), 3),
        "T3" => twisted(s2(), 2),
        "T4" => twisted(s2(), 3),
        "cauchon_s" => cauchon_s(),
        "cauchon_u" => u(),
        "u1" => u1(),
        "cauchon_conj" => cauchon_s().conjugate(&u()),
        "cauchon_sym" => sym(),
        "cauchon_conj_sym" => sym().conjugate(&u()),
        "cauchon_conj1_sym" => sym().conjugate(&u1()),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

pub fn build_solvable_element(name: &str) -> Result<FracExpr> {
    let s2 = || a("e").sub(&FracExpr::konst(rat(1, 3))).mul(&a("e").add(&FracExpr::konst(rat(1, 3))).inv());
    let u2 = || cayley(a("f"));
    Ok(match name {
        "s2dim" => s2(),
        "u2dim" => u2(),
        "conj2dim" => s2().conjugate(&u2()),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

/// `[1+]NAME[^k]`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementRef {
    pub base: String,
    pub power: i64,
    pub one_plus: bool,
}

impl ElementRef {
    pub fn parse(s: &str) -> Result<ElementRef> {
        let s = s.trim();
        let (one_plus, rest) = match s.strip_prefix("1+") {
            Some(r) => (true, r),
            None => (false, s),
        };
        let (base, power) = match rest.split_once('^') {
            Some((b, p)) => {
                let p: i64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                (b.trim(), p)
            }
            None => (rest, 1),
        };
        if base.is_empty() {
            return Err(Error::Parse(format!("empty element name in {s:?}")));
        }
        Ok(ElementRef { base: base.to_string(), power, one_plus })
    }

    pub fn apply(&self, base: FracExpr) -> FracExpr {
        let e = if self.power == 1 { base } else { base.pow(self.power) };
        if self.one_plus {
            k(1).add(&e)
        } else {
            e
        }
    }
}

impl std::fmt::Display for ElementRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.one_plus {
            write!(f, "1+")?;
        }
        write!(f, "{}", self.base)?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

pub fn unit() -> FracExpr {
    FracExpr::Const(int(1))
}
