use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {order} exceeds the supported cap |n| <= {cap}")]
    OrderOutOfRange { order: i64, cap: i64 },

    #[error("argument {value} outside the supported range [{min}, {max}]")]
    ArgumentOutOfRange { value: f64, min: f64, max: f64 },

    #[error("{what} overflows the scalar type at order {order}, argument {z}")]
    Overflow { what: &'static str, order: i64, z: f64 },

    #[error("Struve order must be 0 or 1, got {0}")]
    StruveOrder(i64),

    #[error("truncation order {value} outside [{min}, {max}]")]
    TruncationOutOfRange { value: usize, min: usize, max: usize },

    #[error("panel count {value} outside [{min}, {max}]")]
    PanelCountOutOfRange { value: usize, min: usize, max: usize },

    #[error("singular linear system at k = {k} (pivot column {column}); increase the truncation or perturb k")]
    SingularSystem { k: f64, column: usize },

    #[error("evaluation point ({x1}, {x2}) lies within {tolerance} of the segment")]
    TooCloseToSegment { x1: f64, x2: f64, tolerance: f64 },

    #[error("invalid wavenumber range: {0}")]
    InvalidRange(String),

    #[error("non-finite value encountered: {0}")]
    NonFinite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
