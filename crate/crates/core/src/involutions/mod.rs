pub mod spec;
pub mod symmetric;

pub use spec::{
    apply_involution_pbw, canonical_transform, check_involution, classify_involution, sample_family_i,
    CanonicalTransform, InvolutionCheck, InvolutionFamily, InvolutionSpec,
};
pub use symmetric::{verify_symmetric, verify_symmetric_in, SymmetryReport};
