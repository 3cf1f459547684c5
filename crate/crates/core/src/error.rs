use std::path::PathBuf;

use thiserror::Error;

use crate::model::User;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("power allocation coefficient {0} is outside the open interval (0, 1)")]
    AlphaOutOfDomain(f64),

    #[error("invalid system configuration: {0}")]
    InvalidConfig(String),

    #[error("invalid search bracket [{lo}, {hi}]")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("no decoding order gives positive secrecy to both users at alpha = {alpha}")]
    NoFeasibleOrder { alpha: f64 },

    #[error("every candidate point is infeasible (pair outage is identically 1)")]
    NoFeasibleCandidate,

    #[error("target secrecy rate of the {0} user is zero; the asymptotic optimum sits on the boundary")]
    DegenerateTargetRate(User),

    #[error("secrecy outage curves do not cross on [{lo}, {hi}]")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("no power allocation satisfies the pair outage cap xi = {xi}")]
    QosInfeasible { xi: f64 },

    #[error("experiment configuration error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {message}")]
    Output { path: PathBuf, message: String },
}
