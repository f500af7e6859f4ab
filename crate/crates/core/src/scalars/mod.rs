pub mod bivar;
pub mod poly;
pub mod ratfunc;
pub mod rational;

pub use bivar::{gradedbivar_degree, BPoly, GradedBivar};
pub use poly::Poly;
pub use ratfunc::{ratfunc_shift, RatFunc};
pub use rational::{format_rat, int, parse_rat, rat, show_rat, Rational};
