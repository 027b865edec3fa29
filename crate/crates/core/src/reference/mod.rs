//! Independent oracles: Buchberger's algorithm, normal forms, brute-force
//! Hilbert functions and FGLM order change.

mod buchberger;
mod fglm;
mod hilbert;
mod normal_form;

pub use buchberger::buchberger;
pub use fglm::{fglm, quotient_dimension, MultiplicationTables};
pub use hilbert::{dense_rank, hilbert_bruteforce, hilbert_by_rank, hilbert_by_staircase};
pub use normal_form::{buchberger_criterion, interreduce, is_groebner, normal_form, s_polynomial};
