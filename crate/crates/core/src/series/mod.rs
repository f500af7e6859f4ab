pub mod expr;
pub mod iter;
pub mod sampled;
pub mod skew;

pub use expr::{eval_frac_expr, FracExpr, Model, SkewModel};
pub use iter::{iter_embed, iter_invert, iter_mul, IterModel, IterPrec, IterSeries};
pub use sampled::{SampleFrame, SampledModel, SampledSeries};
pub use skew::{ss_invert, ss_mul, SkewSeries, Window};
