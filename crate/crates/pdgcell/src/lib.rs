//! Exact p-DG cellular structures: cyclotomic nilHecke algebras, quiver Schur
//! algebras and Webster blocks over F_p, with their p-differentials.

pub mod coeff;
pub mod combinat;
pub mod error;
pub mod linalg;
pub mod nilhecke;
pub mod polyrep;
pub mod quantum;
pub mod schur;
pub mod webster;

pub use error::{Error, Result};
