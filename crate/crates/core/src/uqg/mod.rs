//! The quantum group U_q(g): Verma modules, Shapovalov forms and finite-dimensional modules.

mod module;
mod verma;

pub use module::{FiniteModule, Gen, DEFAULT_DIM_CAP};
pub use verma::{Level, Spec, Verma, Word};


#[cfg(test)]
mod tests;
