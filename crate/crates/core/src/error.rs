use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error("invalid discount factor: {0}")]
    InvalidDiscount(String),
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid adaptation spec: {0}")]
    InvalidSpec(String),
    #[error("{0}")]
    Builtin(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
