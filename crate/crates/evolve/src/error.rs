use thiserror::Error;

pub type Result<T> = std::result::Result<T, EvolveError>;

#[derive(Debug, Error)]
pub enum EvolveError {
    #[error("invalid configuration: {0}")]
    Config(String),
    /// A caller broke an operation's precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    #[error(
        "individual {index} at (P = {pressure} atm, T = {temperature} °C): objective `{objective}`: {message}"
    )]
    Evaluation {
        index: usize,
        pressure: f64,
        temperature: f64,
        objective: String,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
