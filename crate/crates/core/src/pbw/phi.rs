use std::collections::HashMap;

use super::elem::PBWElem;
use crate::error::Result;
use crate::scalars::{int, rat, Poly, RatFunc, Rational};
use crate::series::skew::{ss_mul, SkewSeries, Window};

/// Shift constant of the Weyl model, `σ(t) = t - 1`.
pub fn weyl_shift() -> Rational {
    int(-1)
}

/// Shift constant of the two-dimensional solvable model, `σ(e) = e + 1`.
pub fn solvable_shift() -> Rational {
    int(1)
}

/// `p^-1·t`, `p`, `1` and `t - 1/2`: the images of `x`, `y`, `z`, `V`,
/// together with the bare `t` and `p`.
pub fn weyl_bindings(window: Window) -> HashMap<String, SkewSeries> {
    let c = weyl_shift();
    let t = RatFunc::var();
    let mut b = HashMap::new();
    b.insert("x".into(), SkewSeries::monomial(c.clone(), window, -1, t.clone()));
    b.insert("y".into(), SkewSeries::monomial(c.clone(), window, 1, RatFunc::one()));
    b.insert("z".into(), SkewSeries::one(c.clone(), window));
    b.insert("V".into(), SkewSeries::constant(c.clone(), window, RatFunc::from_poly(Poly::linear_root(rat(1, 2)))));
    b.insert("t".into(), SkewSeries::constant(c.clone(), window, t));
    b.insert("p".into(), SkewSeries::monomial(c, window, 1, RatFunc::one()));
    b
}

/// `e ↦ t`, `f ↦ p` with `σ(t) = t + 1`.
pub fn solvable_bindings(window: Window) -> HashMap<String, SkewSeries> {
    let c = solvable_shift();
    let mut b = HashMap::new();
    b.insert("e".into(), SkewSeries::constant(c.clone(), window, RatFunc::var()));
    b.insert("f".into(), SkewSeries::monomial(c, window, 1, RatFunc::one()));
    b
}

/// Image under `x ↦ p⁻¹t`, `y ↦ p`, `z ↦ 1`; exact.
pub fn phi_weyl(f: &PBWElem) -> Result<SkewSeries> {
    let d = f.total_degree() as i64;
    phi_weyl_in(f, Window::new((-16i64).min(-d), 48.max(2 * d)))
}

pub fn phi_weyl_in(f: &PBWElem, window: Window) -> Result<SkewSeries> {
    let b = weyl_bindings(window);
    let (x, y) = (&b["x"], &b["y"]);
    let mut acc = SkewSeries::polynomial(weyl_shift(), window, 0, vec![RatFunc::zero()]);
    let mut xpow: Vec<SkewSeries> = vec![SkewSeries::one(weyl_shift(), window)];
    let mut ypow: Vec<SkewSeries> = vec![SkewSeries::one(weyl_shift(), window)];
    for (&(l, m, _), c) in f.terms() {
        while xpow.len() <= l as usize {
            let next = ss_mul(xpow.last().unwrap(), x)?;
            xpow.push(next);
        }
        while ypow.len() <= m as usize {
            let next = ss_mul(ypow.last().unwrap(), y)?;
            ypow.push(next);
        }
        let term = ss_mul(&xpow[l as usize], &ypow[m as usize])?.scale(c);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbw::elem::tests::pbw_strategy;
    use proptest::prelude::*;

    fn w() -> Window {
        Window::default()
    }

    fn poly(low: i64, cs: Vec<RatFunc>) -> SkewSeries {
        SkewSeries::polynomial(weyl_shift(), w(), low, cs)
    }

    fn lin(r: Rational) -> RatFunc {
        RatFunc::from_poly(Poly::linear_root(r))
    }

    #[test]
    fn v_maps_to_t_minus_half() {
        assert_eq!(phi_weyl_in(&PBWElem::v(), w()).unwrap(), poly(0, vec![lin(rat(1, 2))]));
    }

    #[test]
    fn z_plus_y_squared() {
        let f = PBWElem::z().add(&PBWElem::y().pow(2));
        let one = RatFunc::one();
        assert_eq!(phi_weyl_in(&f, w()).unwrap(), poly(0, vec![one.clone(), RatFunc::zero(), one]));
    }

    #[test]
    fn x_squared() {
        let expect = &lin(int(-1)) * &RatFunc::var();
        assert_eq!(phi_weyl_in(&PBWElem::x().pow(2), w()).unwrap(), poly(-2, vec![expect]));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn phi_is_multiplicative(f in pbw_strategy(4), g in pbw_strategy(4)) {
            let lhs = phi_weyl_in(&f.mul(&g), w()).unwrap();
            let rhs = ss_mul(&phi_weyl_in(&f, w()).unwrap(), &phi_weyl_in(&g, w()).unwrap()).unwrap();
            prop_assert!(lhs.agrees_with(&rhs));
        }
    }
}
