pub mod certify;
pub mod error;
pub mod filtration;
pub mod group;
pub mod involutions;
pub mod lie;
pub mod linalg;
pub mod pbw;
pub mod scalars;
pub mod series;
pub mod subfield;

pub use error::{Error, Result};
pub use pbw::{GradingSpec, PBWElem};
pub use scalars::{GradedBivar, Poly, RatFunc, Rational};
pub use series::{FracExpr, IterSeries, SkewSeries, Window};
