//! q-difference operators in the toral variable x, their series and exact forms, and their
//! reconstruction from Ψ.

mod exact;
mod op;
mod reconstruct;
mod series;

pub use exact::{poly_series, ExactOp, ExpPoly, ExpRational};
pub use op::DiffOp;
pub use reconstruct::{admissibility_check, coset_decompose, matrix_admissibility_check, psi_lx, reconstruct, reconstruct_operator, TieBreak};
pub use series::{q_plus_upto, LxSeries, Series, XSeries};

#[cfg(test)]
mod tests;
