use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("schema error: {0}")]
    Schema(String),

    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },

    #[error("graph is not simple: {0}")]
    NonSimple(String),

    #[error("simplex count {count} exceeds capacity {limit}")]
    Capacity { count: usize, limit: usize },

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("instance too large for exhaustive search: {size} > {limit}")]
    Size { size: usize, limit: usize },

    #[error("bottleneck distance is infinite: {left} vs {right} essential bars")]
    InfiniteDistance { left: usize, right: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("{stage} stage: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Schema(_) | Error::NonSimple(_) => 2,
            Error::Disconnected { .. } => 3,
            Error::Capacity { .. } => 4,
            Error::NonConvergence { .. } => 5,
            Error::Stage { source, .. } => source.exit_code(),
            _ => 1,
        }
    }
}

/// Tags the error of a pipeline stage with the stage name.
pub trait StageContext<T> {
    fn stage(self, stage: &'static str) -> Result<T>;
}

impl<T> StageContext<T> for Result<T> {
    fn stage(self, stage: &'static str) -> Result<T> {
        self.map_err(|e| Error::Stage {
            stage,
            source: Box::new(e),
        })
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Schema(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Schema(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
