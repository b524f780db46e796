use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("parameter: {0}")]
    Parameter(String),
    #[error("precondition: {0}")]
    Precondition(String),
    #[error("arithmetic: {0}")]
    Arithmetic(String),
    #[error("resource: {0}")]
    Resource(String),
    #[error("parse: {0}")]
    Parse(String),
    #[error("structure: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
