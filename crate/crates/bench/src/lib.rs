//! Inputs shared by the criterion benches.

use freealg::group::GroupAlgElem;
use freealg::scalars::rat;
use freealg::PBWElem;

/// `(x + y + z)^d`, a dense element of total degree `d`.
pub fn dense_pbw(d: u32) -> PBWElem {
    PBWElem::x().add(&PBWElem::y()).add(&PBWElem::z()).pow(d)
}

/// Sum of `n` group elements with small exponents and distinct coefficients.
pub fn spread_group(n: i64) -> GroupAlgElem {
    GroupAlgElem::from_terms((0..n).map(|k| ((k % 3 - 1, k % 5 - 2, k - n / 2), rat(k + 1, 2))))
}
