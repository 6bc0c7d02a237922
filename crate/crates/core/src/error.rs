use thiserror::Error;

/// Errors raised anywhere in the monodromy pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error(
        "root finder did not converge within {iters} iterations (worst residual {residual:e})"
    )]
    NonConvergence { iters: usize, residual: f64 },

    #[error(
        "clustering is ambiguous: a pairwise distance {distance:e} sits on the tolerance {tol:e}"
    )]
    AmbiguousClustering { distance: f64, tol: f64 },

    #[error("no admissible basepoint after {0} candidates")]
    BasepointSearchFailed(usize),

    #[error("loop toward branch point {target} enters the clearance disk of branch point {other}")]
    ClearanceViolation { target: usize, other: usize },

    #[error("fiber is degenerate: two roots within {0:e}")]
    DegenerateFiber(f64),

    #[error("strands {0} and {1} collided at t = {2}")]
    CollisionDetected(usize, usize, f64),

    #[error("step size underflow at t = {0}")]
    StepUnderflow(f64),

    #[error("Newton corrector diverged at t = {0}")]
    NewtonDivergence(f64),

    #[error("end fiber does not match start fiber bijectively")]
    MatchAmbiguous,

    #[error("argument unwrapping aliased at t = {0}")]
    UnwrapAliasing(f64),

    #[error("no generic projection angle after {0} candidates")]
    NoGenericAngle(usize),

    #[error("projections of strands at positions {0} and {1} stay tangent near t = {2}")]
    TangencyUnresolved(usize, usize, f64),

    #[error("overlapping crossings at the same instant t = {0}")]
    SimultaneousCrossing(f64),

    #[error("strand counts differ: {0} vs {1}")]
    StrandCountMismatch(usize, usize),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("loop {index}: {source}")]
    AtLoop {
        index: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at_loop(index: usize) -> impl FnOnce(Error) -> Error {
        move |e| Error::AtLoop {
            index,
            source: Box::new(e),
        }
    }

    /// The innermost error, skipping loop-index wrappers.
    pub fn root_cause(&self) -> &Error {
        match self {
            Error::AtLoop { source, .. } => source.root_cause(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
