use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("not a finite-type Cartan matrix: principal minor of order {order} is {value}")]
    NotFiniteType { order: usize, value: String },
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("depth shortfall: need depth {needed}, have {have}")]
    Depth { needed: usize, have: usize },
    #[error("invariant violated [{id}]: {detail}")]
    Invariant { id: &'static str, detail: String },
}

impl Error {
    pub fn invariant(id: &'static str, detail: impl Into<String>) -> Self {
        Error::Invariant { id, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
