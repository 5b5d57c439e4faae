use thiserror::Error;

pub type Result<T> = std::result::Result<T, SurrogateError>;

#[derive(Debug, Error)]
pub enum SurrogateError {
    #[error("{0}")]
    Domain(String),
    #[error("feature `{feature}` is constant ({value}); cannot normalize")]
    DegenerateFeature { feature: &'static str, value: f64 },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("training diverged at epoch {epoch} (loss {loss:e})")]
    Divergence { epoch: usize, loss: f64 },
    #[error("design matrix is rank deficient (rank {rank} < {needed})")]
    RankDeficient { rank: usize, needed: usize },
    #[error("invalid model file: {0}")]
    Format(String),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
