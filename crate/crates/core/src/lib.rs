//! Critical-point ideals of polynomial optimization problems over GF(p):
//! closed-form Hilbert series and degree bounds, Grothendieck and
//! Eagon-Northcott cross-checks, a Macaulay-matrix Gröbner basis solver and
//! reference oracles.

pub mod algebra;
pub mod bench;
pub mod combinat;
pub mod critical;
pub mod eagon_northcott;
pub mod error;
pub mod groebner;
pub mod grothendieck;
pub mod hilbert;
pub mod macaulay;
pub mod reference;
pub mod univariate;

pub use error::{Error, Result};
