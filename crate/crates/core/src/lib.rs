//! Exact computer algebra for quantum-group Verma modules, the trace functions of their
//! intertwining operators, and the q-difference operators those traces diagonalize.

pub mod acceptance;
pub mod diffop;
pub mod error;
pub mod intertwine;
pub mod linalg;
pub mod macdonald;
pub mod qfield;
pub mod rootdata;
pub mod uqg;

pub use error::{Error, Result};
pub use linalg::{Mat, Ring};
pub use qfield::{Form, LambdaPoly, QScalar, Wt, Q};
pub use rootdata::{RootSystem, WeylElement};
