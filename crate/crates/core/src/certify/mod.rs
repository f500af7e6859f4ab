pub mod engine;
pub mod fga;
pub mod rank;
pub mod report;
pub mod words;

pub use engine::{certify_elements, certify_fga, certify_series, CertifyOptions, ModelId};
pub use fga::{fga_mul, FreeGroupAlgElem};
pub use rank::rank_over_rationals;
pub use report::{FreenessReport, Status};
pub use words::{enumerate_words, Word, WordKind};
