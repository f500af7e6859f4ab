use std::collections::HashMap;

use super::elem::GroupAlgElem;
use crate::error::{Error, Result};
use crate::scalars::rat;
use crate::series::expr::FracExpr;

pub const GROUP_ELEMENT_NAMES: &[&str] = &["V_grp", "S2_grp", "T3_grp", "T4_grp"];

fn a1() -> FracExpr {
    FracExpr::atom("a-1")
}

fn b1() -> FracExpr {
    FracExpr::atom("b-1")
}

fn c1() -> FracExpr {
    FracExpr::atom("c-1")
}

fn v_grp() -> FracExpr {
    a1().mul(&b1()).add(&b1().mul(&a1())).scale(rat(1, 2))
}

fn s2_grp() -> FracExpr {
    let third = c1().scale(rat(1, 3));
    let vm = v_grp().sub(&third);
    let vp = v_grp().add(&third);
    let core = vm.mul(&vp.inv()).add(&vm.inv().mul(&vp));
    FracExpr::product(&[c1(), core, c1()])
}

fn twisted(w: FracExpr, v: FracExpr) -> FracExpr {
    let plus = w.add(&v);
    let minus = w.sub(&v);
    FracExpr::product(&[plus.inv(), minus.clone(), s2_grp(), plus, minus.inv()])
}

/// Expressions over the atoms `a-1`, `b-1`, `c-1`.
pub fn build_group_element(name: &str) -> Result<FracExpr> {
    Ok(match name {
        "V_grp" => v_grp(),
        "S2_grp" => s2_grp(),
        "T3_grp" => twisted(c1(), b1().pow(2)),
        "T4_grp" => twisted(c1().pow(2), b1().pow(3)),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

pub fn group_bindings() -> HashMap<String, GroupAlgElem> {
    let one = GroupAlgElem::one();
    HashMap::from([
        ("a-1".to_string(), GroupAlgElem::a().sub(&one)),
        ("b-1".to_string(), GroupAlgElem::b().sub(&one)),
        ("c-1".to_string(), GroupAlgElem::c().sub(&one)),
    ])
}
