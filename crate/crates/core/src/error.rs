use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("geometry error: {0}")]
    Geometry(String),
    #[error("no root: target saturation {target} outside attainable range [{lo}, 1]")]
    NoRoot { target: f64, lo: f64 },
    #[error("degenerate moisture state: {0}")]
    Degenerate(String),
    #[error("singular basin: BA = {ba} in (must be < 36)")]
    SingularBasin { ba: f64 },
    #[error("sensor layout error: {0}")]
    Layout(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("solver did not converge: {msg} (residual {residual:.3e})")]
    Solver { msg: String, residual: f64 },
    #[error("parse error at row {row}, column {column}: {msg}")]
    Parse { row: usize, column: String, msg: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("model error: {0}")]
    Model(String),
    #[error("training aborted: {0}")]
    Training(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Model(e.to_string())
    }
}
