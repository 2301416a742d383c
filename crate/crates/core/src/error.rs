use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    #[error("order {order} out of supported range 0..={max} in {op}")]
    OrderOutOfRange {
        op: &'static str,
        order: u32,
        max: u32,
    },

    #[error(
        "{op} did not converge after {iterations} steps \
         (best estimate {best:e}, error estimate {error:e})"
    )]
    NonConvergence {
        op: &'static str,
        iterations: usize,
        best: f64,
        error: f64,
    },
}

impl Error {
    pub(crate) fn domain(op: &'static str, msg: impl Into<String>) -> Self {
        Error::Domain {
            op,
            msg: msg.into(),
        }
    }
}
