use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::elem::GroupAlgElem;
use crate::error::{Error, Result};

/// Involution of `ℍ` sending each of `a, b, c` to itself or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupInvolutionSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl GroupInvolutionSpec {
    /// `a* = a, b* = b⁻¹, c* = c`
    pub const MAIN1: GroupInvolutionSpec = GroupInvolutionSpec { a: 1, b: -1, c: 1 };
    /// `a* = a, b* = b, c* = c⁻¹`
    pub const MAIN2: GroupInvolutionSpec = GroupInvolutionSpec { a: 1, b: 1, c: -1 };
    /// `a* = a⁻¹, b* = b⁻¹, c* = c⁻¹`
    pub const MAIN3: GroupInvolutionSpec = GroupInvolutionSpec { a: -1, b: -1, c: -1 };

    pub fn main() -> [GroupInvolutionSpec; 3] {
        [Self::MAIN1, Self::MAIN2, Self::MAIN3]
    }

    /// `c* = (b, a)* = a* b* (a*)⁻¹ (b*)⁻¹` must agree with the declared image of `c`.
    pub fn check(&self) -> bool {
        if ![self.a, self.b, self.c].iter().all(|e| e.abs() == 1) {
            return false;
        }
        let a = GroupAlgElem::group(self.a, 0, 0);
        let b = GroupAlgElem::group(0, self.b, 0);
        let c = a.mul(&b).mul(&a.pow(-1).unwrap()).mul(&b.pow(-1).unwrap());
        c == GroupAlgElem::group(0, 0, self.c)
    }
}

impl FromStr for GroupInvolutionSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1" | "main1" => Ok(Self::MAIN1),
            "2" | "main2" => Ok(Self::MAIN2),
            "3" | "main3" => Ok(Self::MAIN3),
            other => Err(Error::UnknownName(format!("group involution {other}"))),
        }
    }
}

impl fmt::Display for GroupInvolutionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |e: i64, g: &str| if e == 1 { g.to_string() } else { format!("{g}^-1") };
        write!(f, "a*={}, b*={}, c*={}", s(self.a, "a"), s(self.b, "b"), s(self.c, "c"))
    }
}

/// `(a^i b^j c^k)* = (c*)^k (b*)^j (a*)^i`, extended linearly.
pub fn apply_group_involution(f: &GroupAlgElem, s: &GroupInvolutionSpec) -> GroupAlgElem {
    let mut out = GroupAlgElem::zero();
    for (&(i, j, k), v) in f.terms() {
        let g = GroupAlgElem::group(0, 0, s.c * k).mul(&GroupAlgElem::group(0, s.b * j, 0)).mul(&GroupAlgElem::group(
            s.a * i,
            0,
            0,
        ));
        out = out.add(&g.scale(v));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::elem::ha_matrix_oracle;
    use crate::group::elem::tests::group_strategy;
    use proptest::prelude::*;

    #[test]
    fn main_involutions_are_consistent() {
        for s in GroupInvolutionSpec::main() {
            assert!(s.check(), "{s}");
        }
        assert!(!GroupInvolutionSpec { a: 1, b: 1, c: 1 }.check());
    }

    #[test]
    fn spec_examples() {
        let ab = GroupAlgElem::a().mul(&GroupAlgElem::b());
        let got = apply_group_involution(&ab, &GroupInvolutionSpec::MAIN1);
        let expect = GroupAlgElem::b().pow(-1).unwrap().mul(&GroupAlgElem::a());
        assert_eq!(got, expect);
        assert_eq!(got, GroupAlgElem::group(1, -1, -1));
        assert_eq!(
            ha_matrix_oracle(&got),
            ha_matrix_oracle(&GroupAlgElem::b().pow(-1).unwrap()).mul(&ha_matrix_oracle(&GroupAlgElem::a()))
        );
        assert_eq!(
            apply_group_involution(&GroupAlgElem::c(), &GroupInvolutionSpec::MAIN2),
            GroupAlgElem::group(0, 0, -1)
        );
        assert_eq!(apply_group_involution(&GroupAlgElem::one(), &GroupInvolutionSpec::MAIN3), GroupAlgElem::one());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn anti_morphism(f in group_strategy(6), g in group_strategy(6)) {
            for s in GroupInvolutionSpec::main() {
                let st = |h: &GroupAlgElem| apply_group_involution(h, &s);
                prop_assert_eq!(st(&f.mul(&g)), st(&g).mul(&st(&f)));
                prop_assert_eq!(st(&st(&f)), f.clone());
            }
        }
    }
}
