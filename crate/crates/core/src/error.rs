use thiserror::Error;

/// Errors raised by the library.
///
/// Every arithmetic operation is exact, so errors only arise from invalid
/// inputs (out-of-range arguments, non-units, malformed structures), never
/// from numerical issues.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument must be positive")]
    ZeroArgument,

    #[error("partition sizes differ: |lambda| = {0}, |mu| = {1}")]
    SizeMismatch(u32, u32),

    #[error("non-unit series: constant term is zero")]
    NonUnitSeries,

    #[error("beyond truncation: degree {requested} exceeds truncation {truncation}")]
    BeyondTruncation { requested: u32, truncation: u32 },

    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u32),

    #[error("unstable range: 2g - 2 + n <= 0 for (g, n) = ({g}, {n})")]
    UnstableRange { g: u32, n: u32 },

    #[error("outside validity range: closed form requires n > g + 1, got (g, n) = ({g}, {n})")]
    OutsideValidityRange { g: u32, n: u32 },

    #[error("edge {0} is not exhalable")]
    NotExhalable(usize),

    #[error("element is not inhalable")]
    NotInhalable,

    #[error("orbigraph is not static")]
    NotStatic,

    #[error("orbigraph is not reduced")]
    NotReduced,

    #[error("invalid class data: {0}")]
    InvalidClass(String),

    #[error("invalid graph data: {0}")]
    InvalidGraph(String),

    #[error("invalid orbigraph data: {0}")]
    InvalidOrbigraph(String),

    #[error("malformed JSON payload: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
