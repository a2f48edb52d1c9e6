use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("integration failed near z = {re} + {im}i: {msg}")]
    Integration { re: f64, im: f64, msg: String },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("odd exponent of y{var} in a radical substitution")]
    Parity { var: usize },
    #[error("resonance: U(k) = 0 at k = {0}")]
    Resonance(usize),
    #[error("sign assumption violated: {0}")]
    SignAssumption(String),
    #[error("no convergence after {k} terms (last increment {last_increment:e})")]
    Convergence {
        k: usize,
        last_increment: f64,
        partial: Vec<f64>,
    },
    #[error("series truncation: tail estimate {tail:e} too large, try n >= {suggested}")]
    Truncation { tail: f64, suggested: usize },
    #[error("reducible configuration: {0}")]
    Reducible(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("matrix is +-Id, every line is fixed")]
    EveryLineFixed,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Pole(_) => "pole",
            Error::Integration { .. } => "integration",
            Error::Degenerate(_) => "degenerate",
            Error::Parity { .. } => "parity",
            Error::Resonance(_) => "resonance",
            Error::SignAssumption(_) => "sign_assumption",
            Error::Convergence { .. } => "convergence",
            Error::Truncation { .. } => "truncation",
            Error::Reducible(_) => "reducible",
            Error::Certification(_) => "certification",
            Error::EveryLineFixed => "every_line_fixed",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
