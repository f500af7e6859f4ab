pub mod catalog;
pub mod elem;
pub mod involution;
pub mod nseries;

pub use catalog::{build_group_element, group_bindings};
pub use elem::{ha_matrix_oracle, ha_mul, GroupAlgElem, MatrixAlgElem};
pub use involution::{apply_group_involution, GroupInvolutionSpec};
pub use nseries::{canonical_valuation, graded_component, theta_leading, NSeriesSpec};
