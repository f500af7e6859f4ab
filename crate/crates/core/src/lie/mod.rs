pub mod algebra;
pub mod free;
pub mod heisenberg;

pub use algebra::{quotient, subalgebra, validate_lie, LieReport, LieSC};
pub use free::free_nilpotent;
pub use heisenberg::{audit_pair, find_invariant_heisenberg, HeisenbergPair};
