use std::path::PathBuf;

/// Errors produced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// An argument lies outside the domain where the operation is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model or configuration was built from parameters violating its invariants.
    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// No film record exists for the requested thickness.
    #[error("no film record for thickness {thickness_nm} nm")]
    FilmNotFound { thickness_nm: f64 },

    /// No material with this name is registered.
    #[error("unknown material `{0}`")]
    UnknownMaterial(String),

    /// The adaptive quadrature could not meet the requested tolerance.
    #[error(
        "quadrature did not converge: best estimate {estimate:e}, achieved error {achieved_error:e} \
         ({evaluations} evaluations)"
    )]
    NotConverged {
        estimate: f64,
        achieved_error: f64,
        evaluations: u64,
    },

    /// A curve generator failed at a specific film thickness and separation.
    #[error("scenario failed at d = {thickness_nm} nm, L = {gap_nm} nm: {source}")]
    Scenario {
        thickness_nm: f64,
        gap_nm: f64,
        #[source]
        source: Box<Error>,
    },

    /// A curve file or its metadata could not be parsed.
    #[error("malformed curve data: {0}")]
    Curve(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("material file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
