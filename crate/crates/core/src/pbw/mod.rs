pub mod catalog;
pub mod elem;
pub mod grading;
pub mod phi;

pub use catalog::{build_element, build_solvable_element, ElementRef};
pub use elem::{pbw_mul, pbw_naive_mul, PBWElem};
pub use grading::{pbw_grade_decompose, pbw_leading, pbw_valuation, GradingSpec};
pub use phi::{phi_weyl, phi_weyl_in, solvable_bindings, weyl_bindings};
