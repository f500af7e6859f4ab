use serde::Serialize;

use super::spec::{apply_involution_pbw, check_involution, InvolutionSpec};
use crate::error::{Error, Result};
use crate::series::expr::FracExpr;
use crate::subfield::{exact_form, with_star, Frame};

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub form: String,
    pub star_form: String,
}

/// Whether `e* = e`, with atoms `x, y, z, V` read in the standard basis.
pub fn verify_symmetric(e: &FracExpr, s: &InvolutionSpec) -> Result<bool> {
    Ok(verify_symmetric_in(e, s, &Frame::standard())?.symmetric)
}

/// Same, with atoms read as the elements of `frame`.
pub fn verify_symmetric_in(e: &FracExpr, s: &InvolutionSpec, frame: &Frame) -> Result<SymmetryReport> {
    let chk = check_involution(s);
    if !chk.ok {
        return Err(Error::NotAnInvolution(chk.failures.join("; ")));
    }
    let bindings = frame.bindings();
    let (starred, star_bindings) = with_star(e, &bindings, &|p| apply_involution_pbw(p, s))?;
    let form = exact_form(e, &bindings, frame)?;
    let star_form = exact_form(&starred, &star_bindings, frame)?;
    Ok(SymmetryReport { symmetric: form.equals(&star_form), form: form.to_string(), star_form: star_form.to_string() })
}
