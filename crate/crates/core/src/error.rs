use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Subdivision budget exhausted. Carries the best available estimate.
    #[error("quadrature did not converge: estimate {estimate:e}, error {err:e}")]
    Convergence { estimate: f64, err: f64 },

    #[error("detuning {x} is within 1e-12 of the resonance xi = {xi}")]
    Resonance { x: f64, xi: f64 },

    #[error("threshold coincides with the pole (chi = {chi})")]
    DegenerateThreshold { chi: f64 },

    #[error("inertial shift {delta0:e} too small to divide by")]
    DivisionDegenerate { delta0: f64 },

    #[error("target F = {target} not reached: closest {achieved} at eps = {epsilon:e}")]
    NotAchievable { target: f64, achieved: f64, epsilon: f64 },

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
