use thiserror::Error;

pub type Result<T> = std::result::Result<T, ModelError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// An argument lies outside the domain of the relation.
    #[error("{quantity} = {value} is outside the admissible domain ({expected})")]
    Domain {
        quantity: &'static str,
        value: f64,
        expected: &'static str,
    },
    /// An exponential argument in the Butler–Volmer relation would overflow.
    #[error("Butler-Volmer exponent {exponent:.3} exceeds the saturation limit")]
    Saturation { exponent: f64 },
    #[error("{what} did not converge within {iterations} iterations (residual {residual:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },
    #[error("current density {current} A/m^2 reaches the limiting current {limit} A/m^2")]
    LimitingCurrent { current: f64, limit: f64 },
    #[error(
        "{species} starvation: consumption {consumed:e} kg/s exceeds supply {supplied:e} kg/s"
    )]
    Starvation {
        species: &'static str,
        consumed: f64,
        supplied: f64,
    },
    #[error("at {voltage} V: {source}")]
    AtVoltage {
        voltage: f64,
        #[source]
        source: Box<ModelError>,
    },
}

impl ModelError {
    pub(crate) fn domain(quantity: &'static str, value: f64, expected: &'static str) -> Self {
        ModelError::Domain {
            quantity,
            value,
            expected,
        }
    }
}
